#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "rmtail/tail_ops.hpp"

using namespace rmtail;

namespace {

std::set<std::string> texts(const std::vector<PartialPermutation>& v) {
  std::set<std::string> out;
  for (const auto& p : v) out.insert(to_string(p));
  return out;
}

bool has(const std::vector<PartialPermutation>& v, const PartialPermutation& p) {
  return std::find(v.begin(), v.end(), p) != v.end();
}

// Length of the longest common suffix.
int common_suffix(const PartialPermutation& a, const PartialPermutation& b) {
  int k = 0;
  while (k < a.size() && k < b.size() && a[a.size() - 1 - k] == b[b.size() - 1 - k]) ++k;
  return k;
}

// Independent characterisation of indel distance: delete down to the longest
// common suffix, then insert the rest. The last symbol can never change.
bool indel_reachable(const PartialPermutation& x, const PartialPermutation& y, int t) {
  const int s = common_suffix(x, y);
  if (s == 0) return false;
  return (x.size() - s) + (y.size() - s) <= t;
}

}  // namespace

TEST_CASE("tail deletion examples") {
  const auto p = parse_perm("2341", 4);
  CHECK(to_string(delete_tail(p, 2)) == "41");
  CHECK(to_string(delete_tail(parse_perm("41", 4), 2)) == "1");
  CHECK(delete_tail(p, 0) == p);
  CHECK(to_string(delete_tail(p, 100)) == "1");
  CHECK_THROWS(delete_tail(p, -1));
}

TEST_CASE("deletion ball examples") {
  CHECK(texts(deletion_ball(parse_perm("3245", 6), 2)) == std::set<std::string>{"3245", "245", "45"});
  CHECK(texts(deletion_ball(parse_perm("1", 4), 3)) == std::set<std::string>{"1"});
  CHECK(texts(deletion_ball(parse_perm("41", 4), 3)) == std::set<std::string>{"41", "1"});
}

TEST_CASE("insertion sphere examples and lexicographic indexing") {
  auto s = insertion_sphere(parse_perm("41", 4), 2);
  REQUIRE(s.size() == 2);
  CHECK(to_string(s[0]) == "2341");
  CHECK(to_string(s[1]) == "3241");
  CHECK(to_string(sphere_element(parse_perm("41", 4), 2, 1)) == "3241");

  auto s1 = insertion_sphere(parse_perm("1", 4), 2);
  CHECK(texts(s1) == std::set<std::string>{"231", "241", "321", "341", "421", "431"});
  CHECK(sphere_size(4, 1, 2) == 6);
  CHECK(sphere_size(4, 2, 2) == 2);
  CHECK(sphere_size(5, 5, 1) == 0);

  const auto p = parse_perm("312", 5);
  CHECK(insertion_sphere(p, 0) == std::vector<PartialPermutation>{p});
  CHECK(insertion_sphere(p, 3).empty());
  CHECK_THROWS(sphere_element(p, 2, 2));
}

TEST_CASE("insertion ball examples") {
  CHECK(texts(insertion_ball(parse_perm("3245", 6), 1)) == std::set<std::string>{"3245", "13245", "63245"});
  CHECK(texts(insertion_ball(parse_perm("341", 4), 2)) == std::set<std::string>{"341", "2341"});
  const auto full = parse_perm("2413", 4);
  CHECK(insertion_ball(full, 1) == std::vector<PartialPermutation>{full});
}

TEST_CASE("indel ball examples") {
  const auto p = parse_perm("3245", 6);
  CHECK(texts(indel_shell(p, 1)) == std::set<std::string>{"245", "13245", "63245"});
  auto b1 = indel_ball(p, 1);
  CHECK(texts(b1) == std::set<std::string>{"3245", "245", "13245", "63245"});
  auto b4 = indel_ball(p, 4);
  CHECK(has(b4, parse_perm("2345", 6)));
  CHECK(has(b4, parse_perm("3645", 6)));
  // The path 3245 -> 245 -> 45 -> 645 -> 3645 has four steps and no shorter one exists.
  CHECK(has(indel_shell(p, 4), parse_perm("3645", 6)));
}

TEST_CASE("sphere size formula matches enumeration") {
  for (int q = 1; q <= 6; ++q) {
    for (const auto& p : enumerate_universe(q)) {
      for (int t = 0; t <= 3; ++t) {
        const auto sphere = insertion_sphere(p, t);
        CHECK(sphere.size() == sphere_size(q, p.size(), t));
        CHECK(std::is_sorted(sphere.begin(), sphere.end()));
        for (std::size_t i = 0; i < sphere.size(); ++i) {
          CHECK(sphere_element(p, t, i) == sphere[i]);
          CHECK(sphere_index(sphere[i], t) == i);
        }
      }
    }
  }
}

TEST_CASE("insertion sphere is exactly the t-fold deletion preimage") {
  for (int q = 1; q <= 5; ++q) {
    const auto universe = enumerate_universe(q);
    for (const auto& p : universe) {
      for (int t = 0; t <= q; ++t) {
        std::vector<PartialPermutation> expected;
        for (const auto& w : universe) {
          if (w.size() == p.size() + t && delete_tail(w, t) == p) expected.push_back(w);
        }
        CHECK(insertion_sphere(p, t) == expected);
      }
    }
  }
}

TEST_CASE("insertion ball is the disjoint union of spheres") {
  for (int q = 1; q <= 5; ++q) {
    for (const auto& p : enumerate_universe(q)) {
      for (int t = 0; t <= 3; ++t) {
        std::vector<PartialPermutation> joined;
        std::size_t total = 0;
        for (int r = 0; r <= t; ++r) {
          auto s = insertion_sphere(p, r);
          total += s.size();
          joined.insert(joined.end(), s.begin(), s.end());
        }
        std::sort(joined.begin(), joined.end());
        CHECK(joined.size() == total);
        CHECK(std::adjacent_find(joined.begin(), joined.end()) == joined.end());
        CHECK(insertion_ball(p, t) == joined);
      }
    }
  }
}

TEST_CASE("deletion and insertion balls are mutually inverse") {
  for (int q = 1; q <= 5; ++q) {
    const auto universe = enumerate_universe(q);
    for (int t = 0; t <= 3; ++t) {
      for (const auto& x : universe) {
        const auto del = deletion_ball(x, t);
        for (const auto& y : universe) {
          const bool in_del = std::binary_search(del.begin(), del.end(), y);
          const auto ins = insertion_ball(y, t);
          const bool in_ins = std::binary_search(ins.begin(), ins.end(), x);
          CHECK(in_del == in_ins);
        }
      }
    }
  }
}

TEST_CASE("indel ball matches the common-suffix characterisation and contains both balls") {
  for (int q = 1; q <= 5; ++q) {
    const auto universe = enumerate_universe(q);
    for (int t = 0; t <= 3; ++t) {
      for (const auto& x : universe) {
        const auto b = indel_ball(x, t);
        for (const auto& y : universe) {
          CHECK(std::binary_search(b.begin(), b.end(), y) == indel_reachable(x, y, t));
        }
        if (t <= 2) {
          for (const auto& y : deletion_ball(x, t)) CHECK(std::binary_search(b.begin(), b.end(), y));
          for (const auto& y : insertion_ball(x, t)) CHECK(std::binary_search(b.begin(), b.end(), y));
        }
      }
    }
  }
}

TEST_CASE("error model names") {
  CHECK(parse_error_model("del") == ErrorModel::deletion);
  CHECK(parse_error_model("insertion") == ErrorModel::insertion);
  CHECK(parse_error_model("indel") == ErrorModel::indel);
  CHECK(to_string(ErrorModel::insertion) == "ins");
  CHECK_THROWS(parse_error_model("swap"));
}
