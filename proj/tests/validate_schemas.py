#!/usr/bin/env python3
# Copyright 2026 the rdgeo authors
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
"""Runs the CLI on a synthetic dataset and validates every JSON/GeoJSON
output against the shipped schemas."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

CLI = pathlib.Path(sys.argv[1])
SCHEMAS = pathlib.Path(sys.argv[2])


def run(*args):
    subprocess.run([str(CLI), *args], check=True, capture_output=True)


def validate(path, schema_name):
    with open(SCHEMAS / schema_name) as f:
        schema = json.load(f)
    with open(path) as f:
        document = json.load(f)
    jsonschema.validate(document, schema)
    print(f"ok: {path.name} against {schema_name}")


def main():
    with tempfile.TemporaryDirectory() as tmp:
        out = pathlib.Path(tmp)
        csv = out / "sites.csv"
        run("synth", "--anchor", "30", "36", "--anchor", "12", "22",
            "--sites-per-anchor", "8", "--sigma", "5",
            "--region", "5", "40", "15", "45", "--seed", "4", "--out-csv", str(csv))

        run("compress", "--input", str(csv), "--slope=-40", "--n-init", "8",
            "--seed", "7", "--out", str(out / "compress"))
        validate(out / "compress" / "solution.json", "solution.schema.json")
        validate(out / "compress" / "outliers.json", "outliers.schema.json")
        validate(out / "compress" / "points.geojson", "geojson.schema.json")

        run("curve", "--input", str(csv), "--slopes=-5", "--slopes=-20",
            "--slopes=-60", "--n-init", "8", "--seed", "7", "--out", str(out / "curve"))
        validate(out / "curve" / "bounds.json", "bounds.schema.json")
        validate(out / "curve" / "bifurcations.json", "bifurcations.schema.json")

        run("compare-models", "--input", str(csv), "--model", "rhumb",
            "--model-b", "great-circle", "--slopes=-5", "--slopes=-20",
            "--n-init", "8", "--seed", "7", "--out", str(out / "compare"))
        validate(out / "compare" / "comparison.json", "comparison.schema.json")

        run("bootstrap", "--input", str(csv), "--slope=-30", "--n-resamples", "12",
            "--level", "0.95", "--n-init", "8", "--seed", "7", "--out", str(out / "boot"))
        validate(out / "boot" / "summary.json", "bootstrap_summary.schema.json")
        validate(out / "boot" / "ellipse.geojson", "geojson.schema.json")


if __name__ == "__main__":
    main()
