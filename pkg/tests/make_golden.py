"""Regenerate the golden reports: ``python3 tests/make_golden.py``.

Only rerun after a deliberate, reviewed change to the computed results.
"""
import json
from pathlib import Path

from ccf import formula, verify
from ccf.quaternion import RatioConvention

GOLDEN = Path(__file__).parent / "golden"


def dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=True) + "\n"


def main():
    GOLDEN.mkdir(exist_ok=True)
    for conv in RatioConvention:
        (GOLDEN / f"cf_scan_{conv.value}.json").write_text(dump(formula.cf_scan(conv).to_json()), encoding="utf-8")
    (GOLDEN / "verify_all.json").write_text(dump(verify.run("all", "both").to_json(timing=False)), encoding="utf-8")


if __name__ == "__main__":
    main()
