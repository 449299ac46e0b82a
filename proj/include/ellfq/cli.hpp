// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ellfq/lseries.hpp"

namespace ellfq {

// Exit codes of the command-line driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitConsistency = 3;

struct Diagnostic {
  std::string path;  // JSON pointer into the offending document
  std::string message;
};

template <class T>
struct Validated {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return value.has_value() && diagnostics.empty(); }
};

struct CurveInput {
  CurveOverFqT curve;
  std::optional<TorsionWitness> witness;
};

// Schema checks on JSON text. Never throws; problems come back as diagnostics.
Validated<CurveInput> validate_curve(const std::string& text);
// q = 0 takes the field from the document.
Validated<RationalFunction> validate_rational_function(const std::string& text, u32 q = 0);
Validated<TorsionWitness> validate_witness(const std::string& text, const CurveOverFqT& E);
Validated<std::vector<ResidueBundle>> validate_residues(const std::string& text);
Validated<LPolynomial> validate_lpolynomial(const std::string& text);

// Runs one command line (without the program name); JSON or tables go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ellfq
