// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wrshapes/dbm.hpp"
#include "wrshapes/octagon.hpp"
#include "wrshapes/reduction.hpp"

namespace wrshapes {

// Matrix text format. DBM: line 1 is "dbm <n>", then n+1 rows of n+1
// whitespace-separated tokens; each token is an integer, a fraction "p/q" or
// "inf". Octagon: "oct <n>" followed by 2n rows of 2n tokens. Row i, column
// j is entry (i,j).
std::string to_text(const Dbm& m);
std::string to_text(const OctMatrix& m);

// Shapes print their closed matrix, or the literal "empty".
std::string to_text(const Shape& s);
std::string to_text(const OctShape& s);

using ParsedMatrix = std::variant<Dbm, OctMatrix>;
ParsedMatrix parse_matrix(std::string_view text);

// Constraint lists, one per line: "i j bound" for DBM systems and
// "a b k l c" for octagonal systems, in the order given.
std::string to_text(const ReducedSystem<Constraint>& r);
std::string to_text(const ReducedSystem<OctConstraint>& r);

std::vector<Constraint> parse_dbm_constraints(std::string_view text);
std::vector<OctConstraint> parse_oct_constraints(std::string_view text);

// Threshold files reuse the constraint-list formats; every listed constraint
// contributes its bound to the matrix cell(s) it denotes.
ThresholdSet thresholds_from(const std::vector<Constraint>& cs);
ThresholdSet thresholds_from(const std::vector<OctConstraint>& cs, int vars);

// Human-readable constraints over named variables, equalities merged
// ("x = 10"), deterministic order. Used by the analyzer and the CLI.
std::vector<std::string> pretty_constraints(const Shape& s,
                                            const std::vector<std::string>& names);
std::vector<std::string> pretty_constraints(const OctShape& s,
                                            const std::vector<std::string>& names);

}  // namespace wrshapes
