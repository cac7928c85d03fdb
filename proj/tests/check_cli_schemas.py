#!/usr/bin/env python3
"""Run every CLI command in JSON mode and validate the output against schemas/.

Usage: check_cli_schemas.py PATH_TO_FFZETA SCHEMA_DIR
"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def load_registry(schema_dir):
    schemas = {}
    for path in sorted(pathlib.Path(schema_dir).glob("*.schema.json")):
        doc = json.loads(path.read_text(encoding="utf-8"))
        jsonschema.Draft202012Validator.check_schema(doc)
        schemas[path.name] = doc
    registry = Registry().with_resources((doc["$id"], Resource.from_contents(doc)) for doc in schemas.values())
    return schemas, registry


def run(binary, args, expect_code=0):
    proc = subprocess.run([binary, *args], capture_output=True, text=True, check=False)
    if proc.returncode != expect_code:
        raise AssertionError(f"{' '.join(args)}: exit {proc.returncode}, expected {expect_code}\n{proc.stderr}")
    return proc.stdout


def main():
    binary, schema_dir = sys.argv[1], sys.argv[2]
    schemas, registry = load_registry(schema_dir)

    def validate(schema_name, doc):
        jsonschema.Draft202012Validator(schemas[schema_name], registry=registry).validate(doc)

    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        values = pathlib.Path(tmp) / "values.jsonl"
        lines = [run(binary, ["zeta", "--q", "3", "--s", s, "--prec", "400", "--format", "series"]) for s in ("1", "2")]
        values.write_text("".join(lines), encoding="utf-8")

        cases = [
            ("value.schema.json", ["zeta", "--q", "3", "--s", "2"], 0),
            ("value.schema.json", ["gamma", "--q", "3", "--num", "-1", "--den", "8"], 0),
            ("value.schema.json", ["pi", "--q", "4", "--ell", "2"], 0),
            ("value.schema.json", ["omega", "--q", "3", "--ell", "3", "--j", "2"], 0),
            ("value.schema.json", ["polylog", "--q", "3", "--n", "2", "--alpha", "theta"], 0),
            ("bernoulli.schema.json", ["bernoulli", "--q", "3", "--n", "4"], 0),
            ("verify.schema.json", ["verify", "chowla-selberg", "--q", "3", "--ell", "2"], 0),
            ("verify.schema.json", ["verify", "digit-formula", "--q", "3", "--ell", "2"], 0),
            ("verify.schema.json", ["verify", "omega-period", "--q", "4", "--ell", "3"], 0),
            ("verify.schema.json", ["verify", "euler-carlitz", "--q", "3", "--n", "4"], 0),
            ("verify.schema.json", ["verify", "frobenius", "--q", "3", "--n", "2"], 0),
            ("verify.schema.json", ["verify", "motive", "--q", "3", "--block", "carlitz:2+polylog:1:1,theta", "--with-psi", "--tdeg", "4", "--prec", "40"], 0),
            ("verify.schema.json", ["verify", "motive", "--q", "3", "--block", "tensor:2", "--perturb", "0,0,0"], 1),
            ("relation-find.schema.json", ["relation", "find", "--q", "3", "--values", str(values), "--over", "fq"], 0),
            ("relation-find.schema.json", ["relation", "find", "--q", "3", "--values", str(values), "--over", "k", "--deg-bound", "2"], 0),
            ("anderson-thakur.schema.json", ["relation", "anderson-thakur", "--q", "3", "--n", "2"], 0),
            ("classify.schema.json", ["classify", "--q", "3", "--monomial", "(-1/8)!^2 * (3/8)! * pi", "--replay"], 0),
            ("trdeg.schema.json", ["trdeg", "--q", "3", "--s", "10", "--ell", "2"], 0),
        ]
        for schema_name, args, code in cases:
            try:
                doc = json.loads(run(binary, [*args, "--format", "json"], code))
                validate(schema_name, doc)
                # value outputs must round-trip through the values-file reader
                if schema_name == "value.schema.json":
                    line = run(binary, [*args, "--format", "series"])
                    validate("series.schema.json", json.loads(line))
                    if json.loads(line) != doc["value"]:
                        raise AssertionError("series output differs from the JSON value")
                    single = pathlib.Path(tmp) / "single.jsonl"
                    single.write_text(line + line, encoding="utf-8")
                    field = doc["value"]["field"]
                    run(binary, ["relation", "find", "--p", str(field["p"]), "--e", str(field["e"]), "--ell", str(field["ell"]),
                                 "--values", str(single), "--over", "fq", "--format", "json"])
                print(f"ok    {schema_name:28} {' '.join(args)}")
            except (AssertionError, jsonschema.ValidationError, json.JSONDecodeError) as exc:
                failures += 1
                print(f"FAIL  {schema_name:28} {' '.join(args)}\n      {str(exc).splitlines()[0]}")

    # the schemas must also reject malformed documents
    for schema_name, bad in [
        ("series.schema.json", {"scale": 0, "prec": 5, "terms": []}),
        ("series.schema.json", {"scale": 2, "prec": None, "terms": [[1]]}),
        ("trdeg.schema.json", {"command": "trdeg", "config": {}}),
        ("classify.schema.json", {"command": "classify", "verdict": "maybe"}),
    ]:
        try:
            validate(schema_name, bad)
            failures += 1
            print(f"FAIL  {schema_name:28} accepted a malformed document")
        except jsonschema.ValidationError:
            print(f"ok    {schema_name:28} rejects a malformed document")

    print(f"{failures} failure(s)" if failures else "all CLI outputs validate")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
