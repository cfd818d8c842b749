# Copyright 2026 The SPAD+ Authors.
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

"""Regenerate data/pima.csv and data/ionosphere.csv from copies of the UCI
files that ship inside two PyPI wheels (no direct UCI access needed).

    pip download common-datasets orange3 --no-deps -d /tmp/wheels
    python scripts/prepare_datasets.py /tmp/wheels
"""
import csv
import glob
import os
import sys
import zipfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def wheel(directory, prefix):
    matches = glob.glob(os.path.join(directory, prefix + "*.whl"))
    if not matches:
        sys.exit(f"no {prefix} wheel in {directory}")
    return zipfile.ZipFile(matches[0])


def write(name, header, rows):
    path = os.path.join(ROOT, "data", name)
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    print(f"wrote {path}: {len(rows)} rows")


def pima(directory):
    # KEEL-style ARFF: 8 real attributes then Class {positive,negative}.
    text = wheel(directory, "common_datasets").read(
        "common_datasets/data/classification/pima/pima.dat").decode()
    header, rows, in_data = [], [], False
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.lower().startswith("@attribute"):
            header.append(line.split()[1])
        elif line.lower() == "@data":
            in_data = True
        elif in_data:
            rows.append([c.strip() for c in line.split(",")])
    header[-1] = "class"
    write("pima.csv", header, rows)


def ionosphere(directory):
    # Orange .tab: names, types, flags, then data. a1/a2 are flagged ignore
    # (a2 is constant), leaving the 32 informative pulse attributes.
    text = wheel(directory, "orange3").read(
        "Orange/tests/datasets/ionosphere.tab").decode()
    lines = text.splitlines()
    names = lines[0].split("\t")
    keep = [i for i, n in enumerate(names) if n not in ("a1", "a2")]
    rows = [[line.split("\t")[i] for i in keep] for line in lines[3:] if line]
    header = [names[i] for i in keep]
    header[-1] = "class"
    write("ionosphere.csv", header, rows)


if __name__ == "__main__":
    d = sys.argv[1] if len(sys.argv) > 1 else "."
    pima(d)
    ionosphere(d)
