#pragma once
// Tail error operators and the balls/spheres built from them.
//
// All ball-valued functions return a sorted, duplicate-free vector, so
// iteration order is lexicographic and deterministic.

#include <cstdint>
#include <string_view>
#include <vector>

#include "rmtail/perm.hpp"

namespace rmtail {

enum class ErrorModel { deletion, insertion, indel };

std::string_view to_string(ErrorModel model);
/// Accepts "del"/"deletion", "ins"/"insertion", "indel".
ErrorModel parse_error_model(std::string_view text);

/// Radius, model and alphabet of a ball.
struct BallSpec {
  ErrorModel model = ErrorModel::deletion;
  int radius = 0;
  int q = 1;
};

/// pi after j tail deletions. Saturates: at least one symbol always remains.
PartialPermutation delete_tail(const PartialPermutation& pi, int j);

/// {pi, pi_1, ..., pi_t} where pi_k = delete_tail(pi, k).
std::vector<PartialPermutation> deletion_ball(const PartialPermutation& pi, int t);

/// |S_ins^t(pi)| for |pi| = length: C(q - length, t) * t!, or 0 when t > q - length.
std::uint64_t sphere_size(int q, int length, int t);

/// Every pi' with |pi'| = |pi| + t and delete_tail(pi', t) = pi, in increasing
/// lexicographic order. Empty when t > q - |pi|.
std::vector<PartialPermutation> insertion_sphere(const PartialPermutation& pi, int t);

/// The element at 0-based position `index` of insertion_sphere(pi, t),
/// computed without enumerating the sphere.
PartialPermutation sphere_element(const PartialPermutation& pi, int t, std::uint64_t index);

/// Position of `word` within insertion_sphere(word's t-suffix, t), where t is
/// the length of the prefix that is removed. Requires 0 <= t < |word|.
std::uint64_t sphere_index(const PartialPermutation& word, int t);

/// Union of insertion spheres of radius 0..t.
std::vector<PartialPermutation> insertion_ball(const PartialPermutation& pi, int t);

/// Everything reachable by at most t single tail operations (one-symbol
/// deletion, saturating at length 1, or one-symbol insertion of an unused
/// symbol, blocked at length q). Includes pi itself.
std::vector<PartialPermutation> indel_ball(const PartialPermutation& pi, int t);

/// Words whose shortest indel path from pi has exactly `radius` steps.
std::vector<PartialPermutation> indel_shell(const PartialPermutation& pi, int radius);

std::vector<PartialPermutation> ball(const PartialPermutation& pi, ErrorModel model, int t);

}  // namespace rmtail
