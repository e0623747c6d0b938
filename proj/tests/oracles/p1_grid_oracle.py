# Copyright 2026 The l1pca Authors. All Rights Reserved.
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

"""Writes the two-attribute instances and their brute-force single-direction
L1 minima used by the acceptance suite.

Run from the repository root:
    python3 tests/oracles/p1_grid_oracle.py tests/data/p1
"""

import argparse
import pathlib

import numpy as np

COUNT = 20
ROWS = 30
STEP = 1e-4
SEED = 20240601


def make_instance(rng):
    # Heavy-tailed (Student-t, 2 dof) cloud stretched along a random axis.
    z = rng.standard_t(2, size=(ROWS, 2))
    theta = rng.uniform(0, np.pi)
    rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    return (z * np.array([3.0, 1.0])) @ rot.T


def grid_minimum(a):
    best = np.inf
    thetas = np.arange(0.0, np.pi, STEP)
    for chunk in np.array_split(thetas, 16):
        c, s = np.cos(chunk), np.sin(chunk)
        proj = np.outer(a[:, 0], c) + np.outer(a[:, 1], s)
        f = np.abs(a[:, [0]] - proj * c).sum(0) + np.abs(a[:, [1]] - proj * s).sum(0)
        best = min(best, f.min())
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("out_dir", type=pathlib.Path)
    out = parser.parse_args().out_dir
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(SEED)
    lines = ["instance,grid_min"]
    for k in range(COUNT):
        a = make_instance(rng)
        name = f"p1_{k:02d}.csv"
        with open(out / name, "w") as f:
            f.write(f"# p1 oracle instance seed={SEED} index={k}\n")
            for row in a:
                f.write(f"{float(row[0])!r},{float(row[1])!r}\n")
        lines.append(f"{name},{float(grid_minimum(a))!r}")
    (out / "golden.csv").write_text(f"# grid step {STEP} rad over [0, pi)\n" + "\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
