// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#include "wrshapes/io.hpp"

#include <sstream>
#include <stdexcept>

namespace wrshapes {

namespace {

template <typename M>
std::string matrix_body(const M& m) {
    std::ostringstream os;
    const int s = m.size();
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
            if (j) {
                os << ' ';
            }
            os << m.at(i, j).str();
        }
        os << '\n';
    }
    return os.str();
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::istringstream is{std::string(text)};
    std::string tok;
    while (is >> tok) {
        out.push_back(tok);
    }
    return out;
}

Bound parse_bound_tok(const std::string& tok, const char* what) {
    auto b = Bound::parse(tok);
    if (!b) {
        throw std::invalid_argument(std::string(what) + ": bad bound token '" + tok + "'");
    }
    return *b;
}

long parse_int_tok(const std::string& tok, const char* what) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(tok, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": bad integer token '" + tok + "'");
    }
    if (used != tok.size()) {
        throw std::invalid_argument(std::string(what) + ": bad integer token '" + tok + "'");
    }
    return v;
}

}  // namespace

std::string to_text(const Dbm& m) {
    return "dbm " + std::to_string(m.vars()) + "\n" + matrix_body(m);
}

std::string to_text(const OctMatrix& m) {
    return "oct " + std::to_string(m.vars()) + "\n" + matrix_body(m);
}

std::string to_text(const Shape& s) {
    return s.is_empty() ? std::string("empty\n") : to_text(s.matrix());
}

std::string to_text(const OctShape& s) {
    return s.is_empty() ? std::string("empty\n") : to_text(s.matrix());
}

ParsedMatrix parse_matrix(std::string_view text) {
    std::vector<std::string> toks = tokenize(text);
    if (toks.size() < 2 || (toks[0] != "dbm" && toks[0] != "oct")) {
        throw std::invalid_argument("parse_matrix: expected 'dbm <n>' or 'oct <n>' header");
    }
    long n = parse_int_tok(toks[1], "parse_matrix");
    if (n < 0) {
        throw std::invalid_argument("parse_matrix: negative dimension");
    }
    const bool oct = toks[0] == "oct";
    const std::size_t s = oct ? 2 * static_cast<std::size_t>(n)
                              : static_cast<std::size_t>(n) + 1;
    if (toks.size() != 2 + s * s) {
        throw std::invalid_argument("parse_matrix: expected " + std::to_string(s * s) +
                                    " entries, got " + std::to_string(toks.size() - 2));
    }
    if (oct) {
        OctMatrix m(static_cast<int>(n));
        for (std::size_t i = 0; i < s; ++i) {
            for (std::size_t j = 0; j < s; ++j) {
                m.set(static_cast<int>(i), static_cast<int>(j),
                      parse_bound_tok(toks[2 + i * s + j], "parse_matrix"));
            }
        }
        return m;
    }
    Dbm m(static_cast<int>(n));
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            m.set(static_cast<int>(i), static_cast<int>(j),
                  parse_bound_tok(toks[2 + i * s + j], "parse_matrix"));
        }
    }
    return m;
}

std::string to_text(const ReducedSystem<Constraint>& r) {
    std::ostringstream os;
    for (const Constraint& c : r.kept) {
        os << c.i << ' ' << c.j << ' ' << c.bound.str() << '\n';
    }
    return os.str();
}

std::string to_text(const ReducedSystem<OctConstraint>& r) {
    std::ostringstream os;
    for (const OctConstraint& c : r.kept) {
        os << c.a << ' ' << c.b << ' ' << c.k << ' ' << c.l << ' ' << c.bound.str() << '\n';
    }
    return os.str();
}

std::vector<Constraint> parse_dbm_constraints(std::string_view text) {
    std::vector<std::string> toks = tokenize(text);
    if (toks.size() % 3 != 0) {
        throw std::invalid_argument("constraint list: expected lines of 'i j bound'");
    }
    std::vector<Constraint> out;
    for (std::size_t t = 0; t < toks.size(); t += 3) {
        Constraint c;
        c.i = static_cast<int>(parse_int_tok(toks[t], "constraint list"));
        c.j = static_cast<int>(parse_int_tok(toks[t + 1], "constraint list"));
        c.bound = parse_bound_tok(toks[t + 2], "constraint list");
        out.push_back(c);
    }
    return out;
}

std::vector<OctConstraint> parse_oct_constraints(std::string_view text) {
    std::vector<std::string> toks = tokenize(text);
    if (toks.size() % 5 != 0) {
        throw std::invalid_argument("constraint list: expected lines of 'a b k l c'");
    }
    std::vector<OctConstraint> out;
    for (std::size_t t = 0; t < toks.size(); t += 5) {
        OctConstraint c;
        c.a = static_cast<int>(parse_int_tok(toks[t], "constraint list"));
        c.b = static_cast<int>(parse_int_tok(toks[t + 1], "constraint list"));
        c.k = static_cast<int>(parse_int_tok(toks[t + 2], "constraint list"));
        c.l = static_cast<int>(parse_int_tok(toks[t + 3], "constraint list"));
        c.bound = parse_bound_tok(toks[t + 4], "constraint list");
        out.push_back(c);
    }
    return out;
}

ThresholdSet thresholds_from(const std::vector<Constraint>& cs) {
    ThresholdSet t;
    for (const Constraint& c : cs) {
        t.add(c.i, c.j, c.bound);
    }
    return t;
}

ThresholdSet thresholds_from(const std::vector<OctConstraint>& cs, int vars) {
    // Route through the matrix encoding so unary doubling and mirror cells
    // match the widening's view.
    ThresholdSet t;
    for (const OctConstraint& c : cs) {
        OctMatrix m = oct_from_constraints(vars, std::span<const OctConstraint>(&c, 1));
        for (int i = 0; i < m.size(); ++i) {
            for (int j = 0; j < m.size(); ++j) {
                if (i != j && m.at(i, j).is_finite()) {
                    t.add(i, j, m.at(i, j));
                }
            }
        }
    }
    return t;
}

namespace {

std::string q_str(const mpq_class& q) {
    return q.get_str();
}

const std::string& var_name(const std::vector<std::string>& names, int idx0) {
    static const std::string fallback = "?";
    if (idx0 >= 0 && idx0 < static_cast<int>(names.size())) {
        return names[idx0];
    }
    return fallback;
}

}  // namespace

std::vector<std::string> pretty_constraints(const Shape& s,
                                            const std::vector<std::string>& names) {
    std::vector<std::string> out;
    if (s.is_empty()) {
        return out;
    }
    const Dbm& m = s.matrix();
    const int sz = m.size();
    auto term = [&](int i, int j) {
        // v_i - v_j with v_0 = 0.
        if (j == 0) {
            return var_name(names, i - 1);
        }
        if (i == 0) {
            return "-" + var_name(names, j - 1);
        }
        return var_name(names, i - 1) + " - " + var_name(names, j - 1);
    };
    for (int i = 0; i < sz; ++i) {
        for (int j = 0; j < sz; ++j) {
            if (i == j || !m.at(i, j).is_finite()) {
                continue;
            }
            if (m.at(j, i).is_finite() && m.at(i, j) + m.at(j, i) == Bound(0L)) {
                // Print each equality once, from the side that reads
                // naturally: "x = c" for unary pairs, "x - y = c" otherwise.
                bool printable = j == 0 || (i != 0 && i < j);
                if (!printable) {
                    continue;
                }
                out.push_back(term(i, j) + " = " + q_str(m.at(i, j).value()));
            } else {
                out.push_back(term(i, j) + " <= " + q_str(m.at(i, j).value()));
            }
        }
    }
    return out;
}

std::vector<std::string> pretty_constraints(const OctShape& s,
                                            const std::vector<std::string>& names) {
    std::vector<std::string> out;
    if (s.is_empty()) {
        return out;
    }
    const OctMatrix& m = s.matrix();
    const int sz = m.size();
    auto expr = [&](int i, int j) {
        int k = i / 2;
        int l = j / 2;
        if (k == l) {
            return std::string(i % 2 == 0 ? "" : "-") + var_name(names, k);
        }
        std::string lhs = (i % 2 == 0 ? "" : "-") + var_name(names, k);
        lhs += (j % 2 == 0 ? " - " : " + ");
        lhs += var_name(names, l);
        return lhs;
    };
    for (int i = 0; i < sz; ++i) {
        for (int j = 0; j < sz; ++j) {
            if (i == j || !m.at(i, j).is_finite()) {
                continue;
            }
            int mi = oct_bar(j);
            int mj = oct_bar(i);
            if (mi < i || (mi == i && mj < j)) {
                continue;  // coherent mirror already printed
            }
            Bound semantic = (i / 2 == j / 2) ? m.at(i, j).half() : m.at(i, j);
            // Merge with the opposite cell into an equality when exact.
            const Bound& opp = m.at(j, i);
            if (opp.is_finite() && m.at(i, j) + opp == Bound(0L)) {
                if (j < i) {
                    continue;
                }
                out.push_back(expr(i, j) + " = " + q_str(semantic.value()));
            } else {
                out.push_back(expr(i, j) + " <= " + q_str(semantic.value()));
            }
        }
    }
    return out;
}

}  // namespace wrshapes
