"""Runs the CLI in json mode and validates each output against schemas/."""
import json
import pathlib
import subprocess
import sys

import jsonschema
import referencing

cli, root = sys.argv[1], pathlib.Path(sys.argv[2])
schemas = {p.name: json.loads(p.read_text()) for p in (root / "schemas").glob("*.schema.json")}
registry = referencing.Registry().with_resources(
    (name, referencing.Resource.from_contents(s)) for name, s in schemas.items()
)

runs = [
    ("eval.schema.json", ["eval", "--census", "hopf+"], 0),
    ("eval.schema.json", ["eval", "--census", "3_1r", "-w", "--trace", "2"], 0),
    ("eval.schema.json", ["eval", "--census", "4_1", "--ring", "dubrovnik", "-w"], 0),
    ("eval.schema.json", ["eval", "--census", "hopf-", "--ring", "homfly"], 0),
    ("eval.schema.json", ["eval", "--file", "data/trefoil.json", "--ring", "custom",
                          "--assignment", "data/kauffman_assignment.json"], 0),
    ("relations.schema.json", ["check-relations", "--preset", "homfly"], 0),
    ("relations.schema.json", ["check-relations", "--assignment", "data/perturbed_assignment.json"], 1),
    ("confluence.schema.json", ["check-confluence", "--system", "quadratic"], 1),
    ("confluence.schema.json", ["check-confluence", "--system", "cubic"], 0),
    ("confluence.schema.json", ["check-confluence", "--file", "data/single_rule_system.json"], 0),
    ("census.schema.json", ["census", "--evaluate", "--ring", "kauffman"], 0),
    ("fuzz.schema.json", ["fuzz", "--trials", "3", "--max-crossings", "6", "--moves", "8"], 0),
]
inputs = [
    ("assignment.schema.json", "data/kauffman_assignment.json"),
    ("assignment.schema.json", "data/perturbed_assignment.json"),
    ("rewrite_system.schema.json", "data/single_rule_system.json"),
    ("diagram.schema.json", "data/trefoil.json"),
]

bad = 0
for schema, args, want in runs:
    p = subprocess.run([cli, *args, "--format", "json"], cwd=root, capture_output=True, text=True)
    try:
        if p.returncode != want:
            raise AssertionError(f"exit {p.returncode}, expected {want}: {p.stderr.strip()}")
        v = jsonschema.Draft202012Validator(schemas[schema], registry=registry)
        v.validate(json.loads(p.stdout))
        print("ok  ", " ".join(args))
    except Exception as e:  # report and keep going
        bad += 1
        print("FAIL", " ".join(args), "->", e)
for schema, path in inputs:
    try:
        jsonschema.Draft202012Validator(schemas[schema], registry=registry).validate(
            json.loads((root / path).read_text()))
        print("ok  ", path)
    except Exception as e:
        bad += 1
        print("FAIL", path, "->", e)
sys.exit(1 if bad else 0)
