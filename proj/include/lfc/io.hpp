#pragma once

// Text formats: field specs, polynomial files, element literals, and the
// deterministic serializations of trees and certificates.
//
// Field spec (key=value, '#' comments):
//   characteristic=zero|finite  p=5  f=1  e=1  precision=24
//   residue_poly=c0,c1,...      (monic, low degree first)
//   eisenstein=a0;a1;...        (each a literal, see below)
//
// Literal: digits low first separated by ',', basis components separated by
// '|', optional leading '-'. "3,1" is 3 + 1*p.
//
// Polynomial file: lines "n=1", "v=3", then one term per line
//   e1 e2 ... : coef
// where coef is an integer or a bracketed literal such as [-3,1].

#include <string>

#include "lfc/ball.hpp"
#include "lfc/cantor_engine.hpp"
#include "lfc/field.hpp"
#include "lfc/linear_avoider.hpp"
#include "lfc/poly_avoider.hpp"
#include "lfc/polynomial.hpp"

namespace lfc {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

DigitLiteral parse_literal(const std::string& text);
FieldParams parse_field_spec(const std::string& text);
Field load_field(const std::string& path);

std::string format_element(const Element& x);
std::string format_ball(const Ball& b);

Polynomial parse_polynomial(const Field& field, const std::string& text);
Polynomial load_polynomial(const Field& field, const std::string& path);
/// Inverse of parse_polynomial.
std::string format_polynomial(const Polynomial& p);

std::string format_certificate(const AvoidanceCertificate& c);
std::string serialize_tree(const ConstructionTree& tree);
std::string serialize_simul(const SimulTree& tree, const LinearFormSpec& spec);

}  // namespace lfc
