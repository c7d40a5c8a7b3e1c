# Copyright 2026 The collperf Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Cost models, segment tuning and simulation for collective communications."""

from ._core import (
    ModelError,
    ParamTable,
    ParseError,
    fit_gamma,
    linear_contention_time,
    load_table,
    load_table_file,
    optimize_segment,
    predict,
    predict_alltoall,
    select,
    simulate,
)

__all__ = [
    "ModelError",
    "ParamTable",
    "ParseError",
    "fit_gamma",
    "linear_contention_time",
    "load_table",
    "load_table_file",
    "optimize_segment",
    "predict",
    "predict_alltoall",
    "select",
    "simulate",
]
