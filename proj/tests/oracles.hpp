#pragma once

// Reference implementations used to cross-check the library. Each is
// written from the operation's definition, not from the library code:
// flood fill instead of union-find, full DP matrices instead of rolling
// rows, exhaustive scans instead of incremental bookkeeping.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "textspot/geometry.hpp"
#include "textspot/tensor.hpp"

namespace oracle {

// 8-connected components by BFS flood fill over nonzero cells, each
// component a row-major-sorted pixel list, components ordered by
// (min y, min x).
std::vector<std::vector<textspot::GridPoint>> flood_components(
    const std::vector<std::uint8_t>& cells, int height, int width);

// Cells >= all 8 in-bounds neighbours and >= thr; equal-valued adjacent
// maxima merged into plateaus (BFS) and snapped to the member cell nearest
// the plateau centroid, earliest in row-major order on ties.
std::vector<textspot::GridPoint> brute_peaks(const textspot::Tensor& grid, double thr);

// Weighted edit distance via the full (m+1)x(n+1) DP matrix. Substituting
// target char c at row i costs 1 - P(c | row i) with upper/lower-case
// class mass folded together; deleting row i costs its max probability;
// inserting costs 1.
double full_matrix_wed(const std::vector<std::vector<float>>& probs,
                       const std::string& target, const std::string& alphabet);

// Unit-cost edit distance by top-down recursion with memoisation.
int levenshtein_recursive(const std::string& a, const std::string& b);

// Detection loss by direct double loops: mean over cells of the summed
// squared region and affinity residuals.
double naive_loss_det(const textspot::Tensor& region, const textspot::Tensor& region_gt,
                      const textspot::Tensor& affinity, const textspot::Tensor& affinity_gt);

// Serialized tensor byte count straight from the format definition:
// 4 magic + 1 version + 1 dtype + 1 rank + 4 per dim + 4 per element.
std::size_t format_byte_count(std::size_t rank, std::size_t elems);

// Softmax in long double without the max-subtraction trick; valid for
// logits small enough not to overflow.
std::vector<double> plain_softmax(const std::vector<double>& logits);

// Equal parametric division of a quad along its longer edge pair;
// piece i of n spans t in [i/n, (i+1)/n].
std::vector<textspot::Quad> divide_quad(const textspot::Quad& q, int n);

// Intersection-over-union of the convex hulls of two point sets by dense
// sampling over their joint bounding box (hull via gift wrapping);
// exact to ~2/samples_per_axis.
double sampled_iou(const std::vector<textspot::Point>& a,
                   const std::vector<textspot::Point>& b, int samples_per_axis = 400);

// Greedy one-to-one assignment: candidate (pred, gt) pairs at iou >= thr,
// highest IoU first (ties: lower pred index, then lower gt index).
std::vector<std::pair<std::size_t, std::size_t>> greedy_pairs(
    const std::vector<std::vector<double>>& iou, double thr);

}  // namespace oracle
