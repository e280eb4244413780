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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ripstab/annotations.hpp"
#include "ripstab/heatmap.hpp"
#include "ripstab/hungarian.hpp"
#include "ripstab/io/scenario_io.hpp"
#include "ripstab/mask.hpp"
#include "ripstab/metrics.hpp"
#include "ripstab/polygon.hpp"
#include "ripstab/rle.hpp"
#include "ripstab/synth.hpp"
#include "ripstab/tca.hpp"
#include "ripstab/version.hpp"

namespace py = pybind11;
using namespace ripstab;

namespace {

BinaryMask mask_from_array(const py::array& arr) {
  auto buf = py::array_t<std::uint8_t,
                         py::array::c_style | py::array::forcecast>::ensure(arr);
  if (!buf || buf.ndim() != 2) {
    throw InputError("mask must be a 2-D array of bool or uint8");
  }
  FrameGeometry geom(static_cast<int>(buf.shape(1)),
                     static_cast<int>(buf.shape(0)));
  BinaryMask mask(geom);
  const std::uint8_t* data = buf.data();
  for (std::size_t i = 0; i < mask.bits().size(); ++i) {
    mask.bits()[i] = data[i] ? 1 : 0;
  }
  return mask;
}

py::array_t<bool> mask_to_array(const BinaryMask& mask) {
  py::array_t<bool> out({mask.height(), mask.width()});
  bool* data = out.mutable_data();
  for (std::size_t i = 0; i < mask.bits().size(); ++i) {
    data[i] = mask.bits()[i] != 0;
  }
  return out;
}

Heatmap heatmap_from_array(const py::array& arr) {
  auto buf =
      py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(arr);
  if (!buf || buf.ndim() != 2) {
    throw InputError("heatmap must be a 2-D float array");
  }
  FrameGeometry geom(static_cast<int>(buf.shape(1)),
                     static_cast<int>(buf.shape(0)));
  Heatmap heat(geom);
  std::copy(buf.data(), buf.data() + heat.values().size(),
            heat.values().begin());
  return heat;
}

py::array_t<double> heatmap_to_array(const Heatmap& heat) {
  py::array_t<double> out({heat.height(), heat.width()});
  std::copy(heat.values().begin(), heat.values().end(), out.mutable_data());
  return out;
}

std::vector<ScoredMask> scored_masks_from_list(const py::list& items) {
  std::vector<ScoredMask> out;
  for (const auto& item : items) {
    auto pair = item.cast<py::tuple>();
    if (pair.size() != 2) {
      throw InputError("expected (score, mask) tuples");
    }
    out.push_back({pair[0].cast<double>(),
                   mask_from_array(pair[1].cast<py::array>())});
  }
  return out;
}

std::vector<BinaryMask> masks_from_list(const py::list& items) {
  std::vector<BinaryMask> out;
  for (const auto& item : items) {
    out.push_back(mask_from_array(item.cast<py::array>()));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Temporal confidence aggregation and mask-stream evaluation";
  m.attr("__version__") = RIPSTAB_VERSION;

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  // --- mask primitives ------------------------------------------------
  m.def(
      "iou",
      [](const py::array& a, const py::array& b) {
        return iou(mask_from_array(a), mask_from_array(b));
      },
      py::arg("a"), py::arg("b"),
      "Intersection over union of two binary masks; 0 when both are empty.");
  m.def(
      "dilate",
      [](const py::array& mask, int radius) {
        return mask_to_array(dilate(mask_from_array(mask), radius));
      },
      py::arg("mask"), py::arg("radius"));
  m.def(
      "downsample_mask",
      [](const py::array& mask, int factor) {
        return mask_to_array(downsample_mask(mask_from_array(mask), factor));
      },
      py::arg("mask"), py::arg("factor"),
      "Max-pool downsampling: any set pixel in a block sets the output.");
  m.def(
      "rasterize",
      [](const std::vector<double>& flat, int width, int height) {
        FrameGeometry geom(width, height);
        return mask_to_array(rasterize(Polygon::from_flat(flat, geom), geom));
      },
      py::arg("polygon"), py::arg("width"), py::arg("height"),
      "Even-odd scanline fill of a flat [x0,y0,x1,y1,...] ring.");
  m.def(
      "rle_encode",
      [](const py::array& mask) {
        Rle rle = rle_encode(mask_from_array(mask));
        py::dict out;
        out["size"] = py::make_tuple(rle.geometry.height, rle.geometry.width);
        out["counts"] = rle.counts;
        return out;
      },
      py::arg("mask"),
      "Column-major uncompressed RLE counts, starting with a zero-run.");
  m.def(
      "rle_decode",
      [](const py::dict& payload) {
        auto size = payload["size"].cast<std::vector<int>>();
        if (size.size() != 2) throw InputError("size must be [height, width]");
        Rle rle;
        rle.geometry = FrameGeometry(size[1], size[0]);
        rle.counts = payload["counts"].cast<std::vector<std::int64_t>>();
        return mask_to_array(rle_decode(rle));
      },
      py::arg("rle"));

  // --- heatmap primitives ----------------------------------------------
  m.def(
      "gaussian_blur",
      [](const py::array& heat, double sigma) {
        return heatmap_to_array(gaussian_blur(heatmap_from_array(heat), sigma));
      },
      py::arg("heatmap"), py::arg("sigma"));
  m.def(
      "upsample_heatmap",
      [](const py::array& heat, int width, int height) {
        return heatmap_to_array(
            upsample_heatmap(heatmap_from_array(heat), FrameGeometry(width, height)));
      },
      py::arg("heatmap"), py::arg("width"), py::arg("height"));
  m.def(
      "threshold_hysteresis",
      [](const py::array& heat, double low, double high, int dilation_radius) {
        return mask_to_array(threshold_hysteresis(heatmap_from_array(heat), low,
                                                  high, dilation_radius));
      },
      py::arg("heatmap"), py::arg("low"), py::arg("high"),
      py::arg("dilation_radius") = 1,
      "Dual-threshold hysteresis with dilation bridging of strong regions.");

  // --- tracking ---------------------------------------------------------
  m.def(
      "hungarian",
      [](const py::array& cost) {
        auto buf = py::array_t<double, py::array::c_style |
                                           py::array::forcecast>::ensure(cost);
        if (!buf || buf.ndim() != 2) {
          throw InputError("cost must be a 2-D float array");
        }
        CostMatrix matrix(static_cast<int>(buf.shape(0)),
                          static_cast<int>(buf.shape(1)));
        std::copy(buf.data(), buf.data() + matrix.data.size(),
                  matrix.data.begin());
        Assignment asg = hungarian(matrix);
        py::dict out;
        out["matches"] = asg.matches;
        out["unmatched_rows"] = asg.unmatched_rows;
        out["unmatched_cols"] = asg.unmatched_cols;
        out["total_cost"] = asg.total_cost;
        return out;
      },
      py::arg("cost"),
      "Minimum-cost assignment; rectangular inputs are padded with cost 1.");

  // --- metrics ------------------------------------------------------------
  m.def(
      "match_instances",
      [](const py::list& predictions, const py::list& ground_truths,
         double iou_threshold) {
        MatchResult res =
            match_instances(scored_masks_from_list(predictions),
                            masks_from_list(ground_truths), iou_threshold);
        py::dict out;
        out["tp"] = res.tp;
        out["fp"] = res.fp;
        out["fn"] = res.fn;
        py::list pairs;
        for (const auto& pair : res.matched_pairs) {
          pairs.append(py::make_tuple(pair.prediction, pair.ground_truth,
                                      pair.iou));
        }
        out["matched_pairs"] = pairs;
        return out;
      },
      py::arg("predictions"), py::arg("ground_truths"),
      py::arg("iou_threshold") = 0.5,
      "Greedy score-ordered matching at an IoU threshold.");
  m.def("average_precision", &average_precision, py::arg("correctness"),
        py::arg("total_gt"),
        "Discrete AP over a correctness sequence sorted by descending score.");
  m.def("f_beta", &f_beta, py::arg("precision"), py::arg("recall"),
        py::arg("beta"),
        "Weighted harmonic mean of precision and recall; beta=2 favors recall.");
  m.def(
      "cohen_kappa",
      [](const std::vector<int>& a, const std::vector<int>& b) {
        return cohen_kappa(a, b);
      },
      py::arg("labels_a"), py::arg("labels_b"));

  // --- annotations ---------------------------------------------------------
  m.def(
      "interpolate_instance",
      [](const py::array& a, const py::array& b, double t) {
        return mask_to_array(
            interpolate_instance(mask_from_array(a), mask_from_array(b), t));
      },
      py::arg("mask_a"), py::arg("mask_b"), py::arg("t"),
      "Signed-distance-field shape interpolation; t=0 and t=1 are exact.");

  // --- tca -------------------------------------------------------------------
  py::class_<TcaConfig>(m, "TcaConfig")
      .def(py::init<>())
      .def_readwrite("alpha", &TcaConfig::alpha)
      .def_readwrite("downsample_factor", &TcaConfig::downsample_factor)
      .def_readwrite("min_present", &TcaConfig::min_present)
      .def_readwrite("decay_gamma", &TcaConfig::decay_gamma)
      .def_readwrite("sigma", &TcaConfig::sigma)
      .def_readwrite("low", &TcaConfig::low)
      .def_readwrite("high", &TcaConfig::high)
      .def_readwrite("dilation_radius", &TcaConfig::dilation_radius)
      .def_readwrite("iou_gate", &TcaConfig::iou_gate)
      .def_readwrite("max_absent_frames", &TcaConfig::max_absent_frames)
      .def_readwrite("reset_present_on_absence",
                     &TcaConfig::reset_present_on_absence)
      .def_readwrite("smooth_in_place", &TcaConfig::smooth_in_place)
      .def_property(
          "match_against",
          [](const TcaConfig& cfg) {
            return cfg.match_against == MatchAgainst::kRaw ? "raw"
                                                           : "stabilized";
          },
          [](TcaConfig& cfg, const std::string& value) {
            if (value == "raw") cfg.match_against = MatchAgainst::kRaw;
            else if (value == "stabilized")
              cfg.match_against = MatchAgainst::kStabilized;
            else throw InputError("match_against must be raw or stabilized");
          })
      .def("validate", &TcaConfig::validate)
      .def_static("preset", &TcaConfig::preset, py::arg("name"))
      .def_static("identity", &TcaConfig::identity);

  py::class_<TcaPipeline>(m, "TcaPipeline")
      .def(py::init([](const TcaConfig& cfg, int width, int height,
                       std::int64_t start_frame) {
             return TcaPipeline(cfg, FrameGeometry(width, height), start_frame);
           }),
           py::arg("config"), py::arg("width"), py::arg("height"),
           py::arg("start_frame") = 0)
      .def_property_readonly("next_frame_index", &TcaPipeline::next_frame_index)
      .def_property_readonly("track_count",
                             [](const TcaPipeline& p) { return p.tracks().size(); })
      .def(
          "step",
          [](TcaPipeline& pipeline, std::int64_t frame_index,
             const py::list& instances) {
            FrameDetections frame;
            frame.video_id = "py";
            frame.frame_index = frame_index;
            for (const auto& item : instances) {
              auto pair = item.cast<py::tuple>();
              if (pair.size() != 2) {
                throw InputError("expected (score, mask) tuples");
              }
              frame.instances.push_back(
                  {pair[0].cast<double>(),
                   mask_from_array(pair[1].cast<py::array>()),
                   {}});
            }
            py::list out;
            for (const TrackOutput& track : pipeline.step(frame)) {
              py::dict rec;
              rec["track_id"] = track.track_id;
              rec["score"] = track.score;
              rec["mask"] = mask_to_array(track.mask);
              out.append(rec);
            }
            return out;
          },
          py::arg("frame_index"), py::arg("instances"),
          "Feed one frame of (score, mask) detections; returns stabilized "
          "instances. Frames must arrive strictly in order.");

  // --- synth -----------------------------------------------------------------
  m.def(
      "generate_scenario",
      [](const std::string& spec_json) {
        ScenarioSpec spec =
            scenario_from_json(nlohmann::json::parse(spec_json));
        py::list frames;
        generate(spec, [&](SynthFrame&& frame) {
          py::dict rec;
          rec["frame_index"] = frame.frame_index;
          py::list gt;
          for (const auto& inst : frame.ground_truth.instances) {
            gt.append(py::make_tuple(inst.instance_id,
                                     mask_to_array(inst.mask)));
          }
          rec["ground_truth"] = gt;
          py::list dets;
          for (const auto& det : frame.detections.instances) {
            dets.append(py::make_tuple(det.score, mask_to_array(det.mask)));
          }
          rec["detections"] = dets;
          frames.append(rec);
        });
        return frames;
      },
      py::arg("spec_json"),
      "Deterministic synthetic detection + ground-truth stream from a JSON "
      "scenario spec.");
}
