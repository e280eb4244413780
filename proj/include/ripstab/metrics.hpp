// Copyright 2026 The RipStab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RIPSTAB_METRICS_HPP
#define RIPSTAB_METRICS_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ripstab/mask.hpp"

namespace ripstab {

struct ScoredMask {
  double score = 0.0;
  BinaryMask mask;
};

struct MatchedPair {
  int prediction = 0;
  int ground_truth = 0;
  double iou = 0.0;
};

struct MatchResult {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::vector<MatchedPair> matched_pairs;
};

/// Greedy mask matching: predictions sorted by descending score (stable for
/// ties) each take the unmatched ground truth of highest IoU >= threshold.
/// Every ground truth and every prediction matches at most once.
MatchResult match_instances(std::span<const ScoredMask> predictions,
                            std::span<const BinaryMask> ground_truths,
                            double iou_threshold);

/// Discrete average precision over a correctness sequence already sorted by
/// descending confidence: AP = sum_n (R_n - R_{n-1}) * P_n with R_0 = 0.
/// total_gt == 0 with predictions present yields 0 and a warning.
double average_precision(const std::vector<bool>& correctness,
                         std::int64_t total_gt);

/// 101-point interpolated variant (max precision at recall >= r for
/// r in {0, 0.01, ..., 1}).
double average_precision_interpolated(const std::vector<bool>& correctness,
                                      std::int64_t total_gt);

/// Weighted harmonic mean of precision and recall:
/// (1 + beta^2) * P * R / (beta^2 * P + R), with 0 when the denominator
/// vanishes. beta = 2 weights recall higher.
double f_beta(double precision, double recall, double beta);

/// Cohen's kappa between two paired categorical sequences. Chance agreement
/// 1 (a single shared category) is defined as kappa = 1. Throws InputError
/// on empty or mismatched input.
double cohen_kappa(std::span<const int> labels_a, std::span<const int> labels_b);

/// Pixel-label mode: agreement between two masks of the same geometry, each
/// pixel a binary category.
double cohen_kappa_masks(const BinaryMask& a, const BinaryMask& b);

struct FramePredictions {
  std::string video_id;
  std::int64_t frame_index = 0;
  std::vector<ScoredMask> instances;
};

struct FrameGroundTruth {
  std::string video_id;
  std::int64_t frame_index = 0;
  bool manual = true;  // false marks an interpolated frame
  std::vector<BinaryMask> instances;
};

struct EvalParams {
  double iou_threshold = 0.5;
  double score_threshold = 0.5;  // operating point for precision/recall
  bool coco_interp = false;
};

struct VideoMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double ap50 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  std::int64_t frames_evaluated = 0;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
};

struct EvalReport {
  std::map<std::string, VideoMetrics> per_video;
  VideoMetrics aggregate;  // micro-averaged over all matched frames
  double fps = 0.0;        // frames per second over all frames processed
};

/// Evaluates a prediction stream against ground truth on manually annotated
/// frames only. Point precision/recall use predictions with score >=
/// score_threshold; AP pools all predictions dataset-wide, ranked by score.
/// A prediction frame without a ground-truth record is a hard error listing
/// the offending indices. `jobs` > 1 matches frames in parallel; the
/// reduction stays in frame order, so results are identical to a serial run.
EvalReport evaluate_stream(std::span<const FramePredictions> predictions,
                           std::span<const FrameGroundTruth> ground_truth,
                           const EvalParams& params = {}, int jobs = 1);

}  // namespace ripstab

#endif  // RIPSTAB_METRICS_HPP
