# Copyright 2026 The ikem Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Information-theoretic key encapsulation over correlated sources."""

from ._ikem import (
    BitString,
    GameReport,
    IkemCiphertext,
    IkemError,
    IkemParams,
    JointSource,
    SampleTriple,
    census,
    composability_check,
    cea_bound_check,
    cond_min_entropy,
    correctness_mc,
    decap,
    decrypt,
    derive_params,
    encap,
    encrypt,
    exact_challenge_sd,
    make_params,
    max_key_bits,
    ot_bound_check,
    sample,
    satellite_source,
    table_source,
    typical_set,
)


def error_code(exc: IkemError) -> str:
    """Code name of an IkemError, e.g. 'InfeasibleKeyLength'."""
    return str(exc).split(":", 1)[0]


__all__ = [name for name in dir() if not name.startswith("_")]
