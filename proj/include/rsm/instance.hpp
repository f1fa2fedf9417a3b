#pragma once

// Stable Marriage instances with complete, strict preference lists.
//
// Text format:
//   line 1:            n
//   lines 2..n+1:      men's preference rows (each a permutation of 0..n-1)
//   line n+2:          blank separator
//   lines n+3..2n+2:   women's preference rows
// Trailing blank lines and trailing whitespace are ignored.

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsm/rng.hpp"

namespace rsm {

struct ParseError : std::runtime_error {
  ParseError(int line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
  int line;
};

struct Instance {
  int n = 0;
  // men_prefs[m][k] is the woman at rank k in m's list; men_rank[m][w] is the
  // inverse. Same shape for women.
  std::vector<std::vector<int>> men_prefs, women_prefs;
  std::vector<std::vector<int>> men_rank, women_rank;

  bool operator==(const Instance& o) const {
    return n == o.n && men_prefs == o.men_prefs && women_prefs == o.women_prefs;
  }
};

namespace detail {

inline std::vector<std::vector<int>> rank_of(
    const std::vector<std::vector<int>>& prefs) {
  std::vector<std::vector<int>> rank(prefs.size(),
                                     std::vector<int>(prefs.size(), -1));
  for (std::size_t i = 0; i < prefs.size(); ++i)
    for (std::size_t k = 0; k < prefs[i].size(); ++k)
      rank[i][prefs[i][k]] = static_cast<int>(k);
  return rank;
}

inline std::string rstrip(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.pop_back();
  return s;
}

inline std::vector<int> parse_row(const std::string& line, int n, int line_no) {
  std::istringstream in(line);
  std::vector<int> row;
  std::string tok;
  while (in >> tok) {
    int v = 0;
    std::size_t used = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ParseError(line_no, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size())
      throw ParseError(line_no, "expected an integer, got '" + tok + "'");
    if (v < 0 || v >= n)
      throw ParseError(line_no, "index " + std::to_string(v) +
                                    " out of range [0, " + std::to_string(n) + ")");
    row.push_back(v);
  }
  if (static_cast<int>(row.size()) != n)
    throw ParseError(line_no, "expected " + std::to_string(n) +
                                  " entries, got " + std::to_string(row.size()));
  std::vector<char> seen(n, 0);
  for (int v : row) {
    if (seen[v])
      throw ParseError(line_no, "duplicate index " + std::to_string(v));
    seen[v] = 1;
  }
  return row;
}

}  // namespace detail

inline void finalize_ranks(Instance& inst) {
  inst.men_rank = detail::rank_of(inst.men_prefs);
  inst.women_rank = detail::rank_of(inst.women_prefs);
}

inline Instance parse_instance(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    lines.push_back(detail::rstrip(std::move(line)));

  std::size_t at = 0;
  auto next_line = [&]() -> const std::string* {
    return at < lines.size() ? &lines[at++] : nullptr;
  };

  const std::string* header = next_line();
  if (!header || header->empty())
    throw ParseError(1, "missing instance size");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(*header, &used);
    if (used != header->size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ParseError(1, "malformed instance size '" + *header + "'");
  }
  if (n <= 0) throw ParseError(1, "instance size must be positive");

  Instance inst;
  inst.n = n;
  for (int m = 0; m < n; ++m) {
    const std::string* line = next_line();
    int line_no = static_cast<int>(at);
    if (!line) throw ParseError(line_no + 1, "missing man row");
    inst.men_prefs.push_back(detail::parse_row(*line, n, line_no));
  }
  const std::string* sep = next_line();
  if (!sep) throw ParseError(static_cast<int>(at) + 1, "missing blank separator");
  if (!sep->empty())
    throw ParseError(static_cast<int>(at), "expected blank separator between sides");
  for (int w = 0; w < n; ++w) {
    const std::string* line = next_line();
    int line_no = static_cast<int>(at);
    if (!line) throw ParseError(line_no + 1, "missing woman row");
    inst.women_prefs.push_back(detail::parse_row(*line, n, line_no));
  }
  while (const std::string* rest = next_line())
    if (!rest->empty())
      throw ParseError(static_cast<int>(at), "unexpected content after instance");

  finalize_ranks(inst);
  return inst;
}

inline Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

inline void serialize_instance(const Instance& inst, std::ostream& out) {
  out << inst.n << '\n';
  auto rows = [&](const std::vector<std::vector<int>>& prefs) {
    for (const auto& row : prefs) {
      for (std::size_t k = 0; k < row.size(); ++k)
        out << (k ? " " : "") << row[k];
      out << '\n';
    }
  };
  rows(inst.men_prefs);
  out << '\n';
  rows(inst.women_prefs);
}

inline std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  serialize_instance(inst, out);
  return out.str();
}

// Uniform random preference rows. Every row draws from its own stream keyed
// by (seed, side, row index), so instances are stable under any evaluation
// order and across platforms.
inline Instance generate_instance(int n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("instance size must be positive");
  Instance inst;
  inst.n = n;
  auto side = [&](int kind) {
    std::vector<std::vector<int>> prefs;
    for (int i = 0; i < n; ++i) {
      std::vector<int> row(n);
      for (int k = 0; k < n; ++k) row[k] = k;
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(kind),
                          static_cast<std::uint64_t>(i)));
      rng.shuffle(row);
      prefs.push_back(std::move(row));
    }
    return prefs;
  };
  inst.men_prefs = side(0);
  inst.women_prefs = side(1);
  finalize_ranks(inst);
  return inst;
}

// Structural checks for hand-built instances; returns human-readable
// violations instead of throwing.
inline std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> issues;
  if (inst.n <= 0) {
    issues.push_back("instance size must be positive");
    return issues;
  }
  auto check_side = [&](const std::vector<std::vector<int>>& prefs,
                        const std::vector<std::vector<int>>& rank,
                        const char* side) {
    if (static_cast<int>(prefs.size()) != inst.n)
      issues.push_back(std::string(side) + ": expected " +
                       std::to_string(inst.n) + " rows, got " +
                       std::to_string(prefs.size()));
    if (rank.size() != prefs.size()) {
      issues.push_back(std::string(side) + ": rank table shape mismatch");
      return;
    }
    for (std::size_t i = 0; i < prefs.size(); ++i) {
      const auto& row = prefs[i];
      std::vector<char> seen(inst.n, 0);
      bool ok = static_cast<int>(row.size()) == inst.n;
      for (int v : row) {
        if (v < 0 || v >= inst.n || seen[v]) {
          ok = false;
          break;
        }
        seen[v] = 1;
      }
      if (!ok) {
        issues.push_back(std::string(side) + " row " + std::to_string(i) +
                         " is not a permutation of 0.." +
                         std::to_string(inst.n - 1));
        continue;  // the rank cross-check is meaningless for a broken row
      }
      if (static_cast<int>(rank[i].size()) != inst.n) {
        issues.push_back(std::string(side) + " row " + std::to_string(i) +
                         ": rank table shape mismatch");
        continue;
      }
      for (std::size_t k = 0; k < row.size(); ++k)
        if (rank[i][row[k]] != static_cast<int>(k)) {
          issues.push_back(std::string(side) + " row " + std::to_string(i) +
                           ": rank table disagrees with preferences");
          break;
        }
    }
  };
  check_side(inst.men_prefs, inst.men_rank, "men");
  check_side(inst.women_prefs, inst.women_rank, "women");
  return issues;
}

}  // namespace rsm
