#include "polyform/identities.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace polyform {

namespace {

i64 tri(i64 t) { return (t * t + t) / 2; }  // P_3(t)

IdentityClaim claim(std::string label, std::vector<std::pair<i64, i64>> terms,
                    i64 u, i64 v) {
  return IdentityClaim{std::move(label), std::move(terms), u, v};
}

}  // namespace

IdentityCheck verify_affine_identity(const IdentityClaim& c) {
  i64 u = 0, v = 0;
  for (auto& [a, x] : c.terms) {
    u += a * tri(x - 1);
    v += a * x;
  }
  IdentityCheck out;
  out.u_residual = u - c.u;
  out.v_residual = v - c.v;
  out.pass = out.u_residual == 0 && out.v_residual == 0;
  return out;
}

const std::vector<IdentitySet>& builtin_identity_sets() {
  // Affine targets like "12m-32" are normalized to u*(m-2)+v once, here:
  // c*m + d == c*(m-2) + (d + 2c).
  static const std::vector<IdentitySet> sets = {
      {"11",
       {
           claim("6(m-2)+4", {{1, 4}, {1, 0}}, 6, 4),
           claim("6(m-2)+5", {{1, 4}, {1, 1}}, 6, 5),
           claim("6(m-2)+6", {{1, 3}, {1, 3}}, 6, 6),
       }},
      {"122",
       {
           claim("12m-32", {{1, 0}, {2, -2}, {2, -2}}, 12, -8),
           claim("12m-31", {{1, -3}, {2, -2}, {2, 0}}, 12, -7),
           claim("12m-30", {{1, -4}, {2, -1}, {2, 0}}, 12, -6),
           claim("12m-29", {{1, -3}, {2, -2}, {2, 1}}, 12, -5),
           claim("12m-28", {{1, 0}, {2, -3}, {2, 1}}, 12, -4),
           claim("12m-27", {{1, 1}, {2, -3}, {2, 1}}, 12, -3),
       }},
      {"123",
       {
           claim("12m-33", {{1, -2}, {2, -2}, {3, -1}}, 12, -9),
           claim("12m-32", {{1, -2}, {2, 0}, {3, -2}}, 12, -8),
           claim("12m-31", {{1, -3}, {2, -2}, {3, 0}}, 12, -7),
           claim("12m-30", {{1, 0}, {2, -3}, {3, 0}}, 12, -6),
           claim("12m-29", {{1, 1}, {2, -3}, {3, 0}}, 12, -5),
           claim("12m-28", {{1, 3}, {2, -2}, {3, -1}}, 12, -4),
           claim("12m-27", {{1, 3}, {2, 0}, {3, -2}}, 12, -3),
       }},
      {"124",
       {
           claim("3m-6", {{1, 2}, {2, -1}, {4, 0}}, 3, 0),
           claim("3m-5", {{1, -1}, {2, -1}, {4, 1}}, 3, 1),
           claim("3m-4", {{1, -2}, {2, 0}, {4, 1}}, 3, 2),
           claim("3m-3", {{1, 3}, {2, 0}, {4, 0}}, 3, 3),
           claim("3m-2", {{1, -2}, {2, 1}, {4, 1}}, 3, 4),
           claim("3m-1", {{1, 3}, {2, 1}, {4, 0}}, 3, 5),
           claim("3m", {{1, 2}, {2, 2}, {4, 0}}, 3, 6),
           claim("3m+1", {{1, 3}, {2, 0}, {4, 1}}, 3, 7),
       }},
      {"116,3",
       {
           claim("116(m-2)+11", {{1, 1}, {2, -7}, {4, 6}}, 116, 11),
       }},
      {"115",
       {
           claim("115(m-2)+32", {{1, -2}, {2, 1}, {4, 8}}, 115, 32),
           claim("115(m-2)+41", {{1, 3}, {2, 9}, {4, 5}}, 115, 41),
           claim("115(m-2)+42", {{1, 2}, {2, 6}, {4, 7}}, 115, 42),
           claim("115(m-2)+35", {{1, 3}, {2, 0}, {4, 8}}, 115, 35),
           claim("115(m-2)+36", {{1, -2}, {2, 9}, {4, 5}}, 115, 36),
           claim("115(m-2)+37", {{1, 11}, {2, 1}, {4, 6}}, 115, 37),
           claim("115(m-2)+38", {{1, 2}, {2, 10}, {4, 4}}, 115, 38),
           claim("115(m-2)+39", {{1, -1}, {2, 6}, {4, 7}}, 115, 39),
       }},
      {"TT",
       {
           claim("37(m-2)+7", {{1, -1}, {2, 4}, {4, 0}, {8, -2}, {16, 1}}, 37, 7),
           claim("37(m-2)+15", {{1, -1}, {2, 0}, {4, -2}, {8, 3}}, 37, 15),
           claim("37(m-2)+m-18", {{1, 4}, {2, 0}, {4, -3}, {8, -1}}, 38, -16),
           claim("37(m-2)+m-16", {{1, 4}, {2, 1}, {4, -3}, {8, -1}}, 38, -14),
           claim("37(m-2)+m-11",
                 {{1, -3}, {2, -3}, {4, -2}, {8, -1}, {16, 1}}, 38, -9),
           claim("37(m-2)+m-10",
                 {{1, -4}, {2, 0}, {4, -1}, {8, -2}, {16, 1}}, 38, -8),
       }},
  };
  return sets;
}

BuiltinReport verify_builtin_sets() {
  BuiltinReport report;
  bool all = true;
  for (const auto& set : builtin_identity_sets()) {
    SetReport sr;
    sr.name = set.name;
    sr.total = static_cast<int>(set.claims.size());
    for (const auto& c : set.claims) {
      auto check = verify_affine_identity(c);
      if (check.pass) {
        ++sr.passed;
      } else {
        std::ostringstream os;
        os << set.name << ":" << c.label << " residual (" << check.u_residual
           << "," << check.v_residual << ")";
        sr.failures.push_back(os.str());
        all = false;
      }
    }
    report.sets.push_back(std::move(sr));
  }
  // The eight 115(m-2)+B' targets must hit every residue class mod 8.
  std::set<i64> residues;
  for (i64 b : {32, 41, 42, 35, 36, 37, 38, 39}) residues.insert(((b % 8) + 8) % 8);
  report.residue_cover_pass = residues.size() == 8;
  report.all_pass = all && report.residue_cover_pass;
  return report;
}

namespace {

// Enumeration box: x - 1 in [-21, 21], i.e. x in [-20, 22]; P3(21) = 231
// already exceeds the largest handled A = 160.
constexpr i64 kXMin = -20;
constexpr i64 kXMax = 22;

bool in_window(i64 f, WindowSign w) {
  return w == WindowSign::positive ? (0 <= f && f < 100) : (-100 < f && f <= 0);
}

}  // namespace

std::vector<std::array<i64, 3>> solve_residue_system(const ResidueSystemClaim& c) {
  if (c.a < 0 || c.a > 160)
    throw std::invalid_argument("solve_residue_system: A must be in [0, 160]");
  std::vector<std::array<i64, 3>> out;
  for (i64 x1 = kXMin; x1 <= kXMax; ++x1) {
    i64 t1 = tri(x1 - 1);
    if (t1 > c.a) continue;
    for (i64 x2 = kXMin; x2 <= kXMax; ++x2) {
      i64 t2 = t1 + 2 * tri(x2 - 1);
      if (t2 > c.a) continue;
      for (i64 x3 = kXMin; x3 <= kXMax; ++x3) {
        if (t2 + 4 * tri(x3 - 1) != c.a) continue;
        i64 f = x1 + 2 * x2 + 4 * x3;
        if (((f % 8) + 8) % 8 != ((c.r % 8) + 8) % 8) continue;
        if (!in_window(f, c.window)) continue;
        out.push_back({x1, x2, x3});
      }
    }
  }
  return out;
}

const std::vector<std::string>& published_s_plus_tokens() {
  static const std::vector<std::string> tokens = {
      "(0,0)",   "(0,1)",   "(0,2)",   "(0,3)",   "(0,4)",   "(0,5)",
      "(0,6)",   "(0,7)",   "(1,0)",   "(1,1)",   "(1,2)",   "(1,3)",
      "(1,4)",   "(1,5)",   "(1,6)",   "(2,0)",   "(2,1)",   "(2,2)",
      "(2,3)",   "(2,4)",   "(2,5)",   "(3,1)",   "(3,2)",   "(3,3)",
      "(3,4)",   "(3,7)",   "(4,0)",   "(4,1)",   "(4,2)",   "(4,3)",
      "(5,1)",   "(5,2)",   "(5,7)",   "(6,0)",   "(6,1)",   "(6,6)",
      "(7,0)",   "(7,5)",   "(8,0)",   "(8,1)",   "(8,2)",   "(8,4)",
      "(8,5)",   "(8,6)",   "(9,1)",   "(9,3)",   "(9,4)",   "(10,2)",
      "(10,5)",  "(10,7)",  "(11,0)",  "(11,3)",  "(11,4)",  "(11,5)",
      "(11,6)",  "(12,4)",  "(13,0)",  "(14,1)",  "(14,3)",  "(15,1)",
      "(15,2)",  "(16,1)",  "(16,2)",  "(16.3)",  "(17,3)",  "(17,6)",
      "(18,0)",  "(18,1)",  "(18,2)",  "(19,0)",  "(19,2)",  "(20,7)",
      "(21,0)",  "(21,1)",  "(22,0)",  "(22,1)",  "(23,1)",  "(23,5)",
      "(25,2)",  "(26,7)",  "(28,4)",  "(18,6)",  "(29,2)",  "(31,3)",
      "(32,2)",  "(32,3)",  "(35,2)",  "(36,1)",  "(37,1)",  "(37,2)",
      "(37,7)",  "(38,0)",  "(43,1)",  "(43,4)",  "(44,0)",  "(44,1)",
      "(50,2)",  "(51,6)",  "(53,0)",  "(53,3)",  "(53,5)",  "(54,7)",
      "(58,2)",  "(64,2)",  "(64,3)",  "(65,1)",  "(65,4)",  "(72,2)",
      "(74,2)",  "(75,0)",  "(81,1)",  "(85,5)",  "(92,4)",  "(106,2)",
      "(106,3)", "(110,2)", "(116,3)", "(123,1)", "(128,2)", "(128,3)",
  };
  return tokens;
}

const std::vector<std::string>& published_s_minus_tokens() {
  static const std::vector<std::string> tokens = {
      "(1,7)",   "(2,6)",   "(2,7)",   "(4,4)",   "(4,5)",   "(4,6)",
      "(4,7)",   "(7,7)",   "(8,3)",   "(8,7)",   "(9,6)",   "(10,0)",
      "(11,2)",  "(11,7)",  "(15,5)",  "(18,6)",  "(18,7)",  "(20,0)",
      "(22,7)",  "(23,6)",  "(26,0)",  "(28,1)",  "(31,4)",  "(36,6)",
      "(37,0)",  "(37,5)",  "(44,6)",  "(44,7)",  "(53,2)",  "(53,4)",
      "(53,7)",  "(54,0)",  "(106,4)", "(110,5)", "(116,4)", "(128,4)",
      "(128,5)",
  };
  return tokens;
}

namespace {

struct ParsedTable {
  std::set<std::pair<i64, i64>> pairs;
  std::vector<std::string> notes;
};

ParsedTable parse_tokens(const std::vector<std::string>& tokens,
                         const std::string& table_name) {
  ParsedTable out;
  for (const auto& tok : tokens) {
    i64 a = 0, r = 0;
    char lp = 0, comma = 0, rp = 0;
    std::istringstream is(tok);
    if ((is >> lp >> a >> comma >> r >> rp) && lp == '(' && comma == ',' &&
        rp == ')') {
      if (!out.pairs.insert({a, r}).second)
        out.notes.push_back(table_name + ": duplicate entry " + tok);
    } else {
      out.notes.push_back(table_name + ": malformed token " + tok);
    }
  }
  return out;
}

}  // namespace

SGridReport recompute_s_sets() {
  SGridReport report;
  // One sweep over the enumeration box marks every (A, r, window) that has
  // a witness; classification of the 161 x 8 grid follows.
  // Flags per pair: solvable in each window, plus strictly (f != 0, since
  // the boundary value 0 lies in both windows as they are stated).
  std::vector<std::array<bool, 4>> solvable(161 * 8, {false, false, false, false});
  for (i64 x1 = kXMin; x1 <= kXMax; ++x1) {
    i64 t1 = tri(x1 - 1);
    if (t1 > 160) continue;
    for (i64 x2 = kXMin; x2 <= kXMax; ++x2) {
      i64 t2 = t1 + 2 * tri(x2 - 1);
      if (t2 > 160) continue;
      for (i64 x3 = kXMin; x3 <= kXMax; ++x3) {
        i64 a = t2 + 4 * tri(x3 - 1);
        if (a > 160) continue;
        i64 f = x1 + 2 * x2 + 4 * x3;
        i64 r = ((f % 8) + 8) % 8;
        auto& flags = solvable[static_cast<std::size_t>(a * 8 + r)];
        if (in_window(f, WindowSign::positive)) flags[0] = true;
        if (in_window(f, WindowSign::negative)) flags[1] = true;
        if (f > 0 && f < 100) flags[2] = true;
        if (f < 0 && f > -100) flags[3] = true;
      }
    }
  }
  for (i64 a = 0; a <= 160; ++a) {
    for (i64 r = 0; r < 8; ++r) {
      auto flags = solvable[static_cast<std::size_t>(a * 8 + r)];
      PairClass cls = flags[0] ? (flags[1] ? PairClass::both : PairClass::pos_only)
                               : (flags[1] ? PairClass::neg_only : PairClass::neither);
      report.grid.push_back({a, r, cls});
      if (cls == PairClass::pos_only) report.pos_only.insert({a, r});
      if (cls == PairClass::neg_only) report.neg_only.insert({a, r});
    }
  }

  auto plus = parse_tokens(published_s_plus_tokens(), "S+");
  auto minus = parse_tokens(published_s_minus_tokens(), "S-");
  report.transcription_notes = plus.notes;
  report.transcription_notes.insert(report.transcription_notes.end(),
                                    minus.notes.begin(), minus.notes.end());

  auto classify = [&](i64 a, i64 r) {
    return report.grid[static_cast<std::size_t>(a * 8 + r)].cls;
  };
  auto class_name = [](PairClass c) -> std::string {
    switch (c) {
      case PairClass::pos_only: return "pos-only";
      case PairClass::neg_only: return "neg-only";
      case PairClass::both: return "both";
      default: return "neither";
    }
  };
  auto diff_side = [&](const ParsedTable& table, PairClass expected,
                       const std::set<std::pair<i64, i64>>& computed,
                       const std::string& name) {
    for (auto& [a, r] : table.pairs) {
      if (classify(a, r) != expected) {
        std::string detail = name + " lists it but computed class is " +
                             class_name(classify(a, r));
        if (classify(a, r) == PairClass::both) {
          auto flags = solvable[static_cast<std::size_t>(a * 8 + r)];
          bool wanted = expected == PairClass::pos_only ? flags[2] : flags[3];
          bool other = expected == PairClass::pos_only ? flags[3] : flags[2];
          if (wanted && !other)
            detail += "; listed side holds for f != 0 (f=0 window boundary)";
          else if (!wanted && !other)
            detail += "; witnessed only by f=0 (f=0 window boundary)";
        }
        report.diff.push_back({a, r, detail});
      }
    }
    for (auto& [a, r] : computed) {
      if (!table.pairs.count({a, r}))
        report.diff.push_back(
            {a, r, "computed " + class_name(expected) + " but absent from " + name});
    }
  };
  diff_side(plus, PairClass::pos_only, report.pos_only, "S+");
  diff_side(minus, PairClass::neg_only, report.neg_only, "S-");
  return report;
}

}  // namespace polyform
