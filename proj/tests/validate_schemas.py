# Copyright 2026 The Telecomp Authors
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

"""Runs CLI commands and validates their JSON output against schemas/."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

CLI, SCHEMAS = sys.argv[1], pathlib.Path(sys.argv[2])


def validator(name):
    s = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    cls = jsonschema.validators.validator_for(s)
    cls.check_schema(s)
    return cls(s)


VALIDATORS = {n: validator(n) for n in ("estimate_report", "baseline_report", "sweep", "trace_event")}


CASES = [
    ("estimate_report", "estimate-serial --gen uniform:mu=0.01,n=16 --theta 0.2 --r 10 --alpha 50"),
    ("estimate_report", "estimate-serial --gen constant:c=2e-8,n=4 --schedule --ideal"),
    ("estimate_report", "estimate-epr --gen uniform:mu=0.3,n=6 --theta 0.8 --alpha 100"),
    ("estimate_report", "estimate-distributed --gen list:0.9,-0.8,0.7,-0.2 --theta 0.8 --eta 3 --r 2 --alpha 40 --force"),
    ("baseline_report", "baseline --gen uniform:mu=0.2,n=100 --samples 50 --repeats 10"),
    ("sweep", "sweep --gen skewed:n=64 --thetas 0.2,0.1,0.05"),
    ("sweep", "sweep --gen constant:c=0.2,n=8 --theta 0.3 --etas 1,2,4 --r 3 --alpha 20"),
]

failures = 0
with tempfile.TemporaryDirectory() as tmp:
    trace = pathlib.Path(tmp) / "trace.jsonl"
    for name, args in CASES:
        traced = args.startswith(("estimate-epr", "estimate-distributed"))
        cmd = [CLI, *args.split()] + (["--trace", str(trace)] if traced else [])
        out = subprocess.run(cmd, check=True, capture_output=True, text=True).stdout
        try:
            VALIDATORS[name].validate(json.loads(out))
            if traced:
                lines = trace.read_text().splitlines()
                assert lines, "empty trace"
                for line in lines:
                    VALIDATORS["trace_event"].validate(json.loads(line))
            print(f"ok    {name:16s} {args}")
        except (jsonschema.ValidationError, AssertionError) as e:
            failures += 1
            print(f"FAIL  {name:16s} {args}\n      {e}")

sys.exit(1 if failures else 0)
