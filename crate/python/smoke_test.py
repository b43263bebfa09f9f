#!/usr/bin/env python3
"""Smoke test for the severi_py extension module.

Locates the built shared library under target/{debug,release}, copies it
into a temp directory under the importable name, and exercises the JSON
API end to end.
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def locate_library() -> pathlib.Path:
    for profile in ("debug", "release"):
        cand = ROOT / "target" / profile / "libseveri_py.so"
        if cand.exists():
            return cand
    sys.exit("libseveri_py.so not found; run `cargo build -p severi-py` first")


def main() -> None:
    lib = locate_library()
    with tempfile.TemporaryDirectory() as tmp:
        shutil.copy(lib, pathlib.Path(tmp) / "severi_py.so")
        sys.path.insert(0, tmp)
        import severi_py

        # family numerology
        p = json.loads(severi_py.params(6, 6, 0))
        assert p["genus"] == 4 and p["rho"] == 4, p
        assert p["expected_dim"] == 15 and p["expected_moduli"] == 7, p
        flags = [f["flag"] for f in p["classification"]["flags"]]
        assert "SpecialModuliProp24" in flags, flags

        # construct -> analyze -> normality pipeline
        built = json.loads(severi_py.construct("tricuspidal-quartic", 7, 31))
        curve_text = json.dumps(built["curve_file"])
        analysis = json.loads(severi_py.analyze_curve(curve_text))
        assert analysis["cusps"] == 3 and analysis["nodes"] == 0, analysis
        assert analysis["genus"] == 0, analysis
        norm = json.loads(severi_py.normality(curve_text, 1))
        assert norm["verdict"] is False and norm["rank"] == 1, norm

        # multiplication map on the four-node sextic
        sextic = json.loads(severi_py.construct("four-node-sextic", 11, 31))
        sextic_text = json.dumps(sextic["curve_file"])
        mu = json.loads(severi_py.mu(sextic_text))
        assert mu["rank"] == 6 and mu["ker_dim"] == 0, mu
        deleted = json.loads(severi_py.mu(sextic_text, 0))
        assert deleted["rank_increment_holds"] is True, deleted

        # census row
        rows = json.loads(severi_py.census(6, 6, 6, 6, 0, 0))
        assert len(rows) == 1 and rows[0]["params"]["expected_moduli"] == 7, rows

        # fast verification suite
        suite = json.loads(severi_py.verify_paper(True))
        assert suite["all_passed"] is True, suite
        assert len(suite["items"]) == 12, suite

        # errors surface as ValueError
        try:
            severi_py.construct("no-such-recipe")
        except ValueError:
            pass
        else:
            sys.exit("expected ValueError for an unknown recipe")

    print("severi_py smoke test: all checks passed")


if __name__ == "__main__":
    main()
