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

#include "ripstab/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "ripstab/log.hpp"

namespace ripstab {

MatchResult match_instances(std::span<const ScoredMask> predictions,
                            std::span<const BinaryMask> ground_truths,
                            double iou_threshold) {
  MatchResult result;
  std::vector<int> order(predictions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return predictions[a].score > predictions[b].score;
  });

  std::vector<char> gt_taken(ground_truths.size(), 0);
  for (int pi : order) {
    int best_gt = -1;
    double best_iou = 0.0;
    for (std::size_t gi = 0; gi < ground_truths.size(); ++gi) {
      if (gt_taken[gi]) continue;
      double ov = iou(predictions[pi].mask, ground_truths[gi]);
      if (ov >= iou_threshold && ov > best_iou) {
        best_iou = ov;
        best_gt = static_cast<int>(gi);
      }
    }
    if (best_gt >= 0) {
      gt_taken[best_gt] = 1;
      result.matched_pairs.push_back({pi, best_gt, best_iou});
      ++result.tp;
    } else {
      ++result.fp;
    }
  }
  result.fn = static_cast<std::int64_t>(ground_truths.size()) - result.tp;
  return result;
}

double average_precision(const std::vector<bool>& correctness,
                         std::int64_t total_gt) {
  if (total_gt == 0) {
    if (!correctness.empty()) {
      log_warn("average precision over zero ground truths is defined as 0");
    }
    return 0.0;
  }
  double ap = 0.0;
  std::int64_t tp = 0;
  std::int64_t seen = 0;
  double prev_recall = 0.0;
  for (bool correct : correctness) {
    ++seen;
    if (!correct) continue;
    ++tp;
    double recall = static_cast<double>(tp) / total_gt;
    double precision = static_cast<double>(tp) / seen;
    ap += (recall - prev_recall) * precision;
    prev_recall = recall;
  }
  return ap;
}

double average_precision_interpolated(const std::vector<bool>& correctness,
                                      std::int64_t total_gt) {
  if (total_gt == 0) {
    if (!correctness.empty()) {
      log_warn("average precision over zero ground truths is defined as 0");
    }
    return 0.0;
  }
  std::vector<double> recalls, precisions;
  std::int64_t tp = 0, seen = 0;
  for (bool correct : correctness) {
    ++seen;
    if (correct) ++tp;
    recalls.push_back(static_cast<double>(tp) / total_gt);
    precisions.push_back(static_cast<double>(tp) / seen);
  }
  double ap = 0.0;
  for (int k = 0; k <= 100; ++k) {
    double r = k / 100.0;
    double best = 0.0;
    for (std::size_t i = 0; i < recalls.size(); ++i) {
      if (recalls[i] >= r) best = std::max(best, precisions[i]);
    }
    ap += best;
  }
  return ap / 101.0;
}

double f_beta(double precision, double recall, double beta) {
  if (!(precision >= 0.0 && precision <= 1.0) ||
      !(recall >= 0.0 && recall <= 1.0)) {
    throw InputError("precision and recall must be in [0,1]");
  }
  if (beta < 0.0) throw InputError("beta must be >= 0");
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  if (denom == 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denom;
}

double cohen_kappa(std::span<const int> labels_a,
                   std::span<const int> labels_b) {
  if (labels_a.empty()) throw InputError("cohen_kappa: empty input");
  if (labels_a.size() != labels_b.size()) {
    throw InputError("cohen_kappa: sequences differ in length");
  }
  const double n = static_cast<double>(labels_a.size());
  std::unordered_map<int, std::int64_t> count_a, count_b;
  std::int64_t agree = 0;
  for (std::size_t i = 0; i < labels_a.size(); ++i) {
    if (labels_a[i] == labels_b[i]) ++agree;
    ++count_a[labels_a[i]];
    ++count_b[labels_b[i]];
  }
  const double p_o = agree / n;
  double p_e = 0.0;
  for (const auto& [cat, ca] : count_a) {
    auto it = count_b.find(cat);
    if (it != count_b.end()) {
      p_e += (ca / n) * (it->second / n);
    }
  }
  if (p_e >= 1.0) return 1.0;
  return (p_o - p_e) / (1.0 - p_e);
}

double cohen_kappa_masks(const BinaryMask& a, const BinaryMask& b) {
  if (a.geometry() != b.geometry()) {
    throw InputError("cohen_kappa_masks: geometry mismatch");
  }
  std::vector<int> la(a.bits().begin(), a.bits().end());
  std::vector<int> lb(b.bits().begin(), b.bits().end());
  return cohen_kappa(la, lb);
}

namespace {

struct PooledPrediction {
  double score = 0.0;
  bool correct = false;
};

struct Accumulator {
  std::int64_t tp = 0, fp = 0, fn = 0;
  std::int64_t total_gt = 0;
  std::int64_t frames = 0;
  std::vector<PooledPrediction> pooled;  // in stream order for stable ties
};

double safe_ratio(std::int64_t num, std::int64_t denom) {
  return denom == 0 ? 0.0 : static_cast<double>(num) / denom;
}

VideoMetrics finalize(const Accumulator& acc, bool coco_interp) {
  VideoMetrics m;
  m.tp = acc.tp;
  m.fp = acc.fp;
  m.fn = acc.fn;
  m.frames_evaluated = acc.frames;
  m.precision = safe_ratio(acc.tp, acc.tp + acc.fp);
  m.recall = safe_ratio(acc.tp, acc.tp + acc.fn);
  m.f1 = f_beta(m.precision, m.recall, 1.0);
  m.f2 = f_beta(m.precision, m.recall, 2.0);

  std::vector<int> order(acc.pooled.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return acc.pooled[a].score > acc.pooled[b].score;
  });
  std::vector<bool> flags;
  flags.reserve(order.size());
  for (int i : order) flags.push_back(acc.pooled[i].correct);
  m.ap50 = coco_interp ? average_precision_interpolated(flags, acc.total_gt)
                       : average_precision(flags, acc.total_gt);
  return m;
}

}  // namespace

EvalReport evaluate_stream(std::span<const FramePredictions> predictions,
                           std::span<const FrameGroundTruth> ground_truth,
                           const EvalParams& params, int jobs) {
  const auto t_start = std::chrono::steady_clock::now();

  std::unordered_map<std::string, const FrameGroundTruth*> gt_index;
  gt_index.reserve(ground_truth.size());
  auto key = [](const std::string& video, std::int64_t frame) {
    return video + "#" + std::to_string(frame);
  };
  for (const auto& g : ground_truth) {
    gt_index[key(g.video_id, g.frame_index)] = &g;
  }

  std::vector<std::string> missing;
  for (const auto& p : predictions) {
    if (!gt_index.count(key(p.video_id, p.frame_index))) {
      missing.push_back(p.video_id + ":" + std::to_string(p.frame_index));
    }
  }
  if (!missing.empty()) {
    std::string joined;
    for (const auto& m : missing) joined += (joined.empty() ? "" : ", ") + m;
    throw InputError("prediction frames without annotation records: " + joined);
  }

  std::unordered_map<std::string, const FramePredictions*> pred_index;
  pred_index.reserve(predictions.size());
  for (const auto& p : predictions) {
    pred_index[key(p.video_id, p.frame_index)] = &p;
  }

  // Per-frame matching is independent; collect work items in stream order.
  struct FrameWork {
    const FrameGroundTruth* gt = nullptr;
    const std::vector<ScoredMask>* preds = nullptr;
    MatchResult point;
    std::vector<char> curve_correct;
  };
  static const std::vector<ScoredMask> kNoPredictions;
  std::vector<FrameWork> work;
  for (const auto& g : ground_truth) {
    if (!g.manual) continue;
    FrameWork item;
    item.gt = &g;
    auto it = pred_index.find(key(g.video_id, g.frame_index));
    item.preds = it != pred_index.end() ? &it->second->instances : &kNoPredictions;
    work.push_back(std::move(item));
  }

  auto process = [&](FrameWork& item) {
    const std::vector<ScoredMask>& preds = *item.preds;
    std::vector<ScoredMask> kept;
    for (const auto& s : preds) {
      if (s.score >= params.score_threshold) kept.push_back(s);
    }
    item.point = match_instances(kept, item.gt->instances, params.iou_threshold);
    MatchResult curve =
        match_instances(preds, item.gt->instances, params.iou_threshold);
    item.curve_correct.assign(preds.size(), 0);
    for (const auto& pair : curve.matched_pairs) {
      item.curve_correct[pair.prediction] = 1;
    }
  };

  if (jobs <= 1 || work.size() < 2) {
    for (auto& item : work) process(item);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      while (true) {
        std::size_t idx = next.fetch_add(1);
        if (idx >= work.size()) return;
        process(work[idx]);
      }
    };
    std::vector<std::thread> pool;
    int n = std::min<int>(jobs, static_cast<int>(work.size()));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Ordered reduction, identical to the serial pass.
  std::map<std::string, Accumulator> per_video;
  Accumulator aggregate;
  for (const FrameWork& item : work) {
    Accumulator& acc = per_video[item.gt->video_id];
    acc.tp += item.point.tp;
    acc.fp += item.point.fp;
    acc.fn += item.point.fn;
    acc.frames += 1;
    acc.total_gt += static_cast<std::int64_t>(item.gt->instances.size());
    const std::vector<ScoredMask>& preds = *item.preds;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      acc.pooled.push_back({preds[i].score, item.curve_correct[i] != 0});
    }
  }

  EvalReport report;
  for (const auto& [video, acc] : per_video) {
    report.per_video[video] = finalize(acc, params.coco_interp);
    aggregate.tp += acc.tp;
    aggregate.fp += acc.fp;
    aggregate.fn += acc.fn;
    aggregate.frames += acc.frames;
    aggregate.total_gt += acc.total_gt;
    aggregate.pooled.insert(aggregate.pooled.end(), acc.pooled.begin(),
                            acc.pooled.end());
  }
  report.aggregate = finalize(aggregate, params.coco_interp);

  const auto t_end = std::chrono::steady_clock::now();
  const double seconds =
      std::chrono::duration<double>(t_end - t_start).count();
  report.fps = seconds > 0.0
                   ? static_cast<double>(ground_truth.size()) / seconds
                   : 0.0;
  return report;
}

}  // namespace ripstab
