# Copyright 2026 The RipStab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Temporal confidence aggregation and evaluation for video instance
segmentation mask streams."""

from ripstab._core import (
    InputError,
    TcaConfig,
    TcaPipeline,
    __version__,
    average_precision,
    cohen_kappa,
    dilate,
    downsample_mask,
    f_beta,
    gaussian_blur,
    generate_scenario,
    hungarian,
    interpolate_instance,
    iou,
    match_instances,
    rasterize,
    rle_decode,
    rle_encode,
    threshold_hysteresis,
    upsample_heatmap,
)

__all__ = [
    "InputError",
    "TcaConfig",
    "TcaPipeline",
    "__version__",
    "average_precision",
    "cohen_kappa",
    "dilate",
    "downsample_mask",
    "f_beta",
    "gaussian_blur",
    "generate_scenario",
    "hungarian",
    "interpolate_instance",
    "iou",
    "match_instances",
    "rasterize",
    "rle_decode",
    "rle_encode",
    "threshold_hysteresis",
    "upsample_heatmap",
]
