"""Smoke test for the `arbor` extension module.

Build first:
    cargo build -p arbor-py --release
then run from the repository root:
    python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    built = ROOT / "target" / "release" / "libarbor.so"
    if not built.exists():
        sys.exit(f"missing {built}; run `cargo build -p arbor-py --release`")
    tmp = pathlib.Path(tempfile.mkdtemp())
    shutil.copy(built, tmp / "arbor.so")
    sys.path.insert(0, str(tmp))
    import arbor

    return arbor


def main():
    arbor = load_module()

    assert "chebyshev_d2" in arbor.catalog_names()

    seq = arbor.aut_tree_fpp(2, 3)
    assert seq["exact"] == ["1/1", "1/2", "3/8", "39/128"], seq

    assert arbor.dihedral_fpp(3, 2) == "5/9"

    table = arbor.fixed_point_table(10, catalog="chebyshev_d2")
    assert table["levels"][-1]["proportion"] == "513/2048", table["levels"][-1]

    pres = (ROOT / "data" / "basilica.json").read_text()
    table = arbor.fixed_point_table(3, presentation=pres)
    assert len(table["levels"]) == 3

    est = arbor.sample_aut_tree(2, 3, 20000, seed=7)
    assert est["ci_low"] <= 39 / 128 <= est["ci_high"], est

    report = arbor.analyze_polynomial((ROOT / "examples" / "x2m2.json").read_text())
    assert report["verdict"]["verdict"] == "ChebyshevLike", json.dumps(report["verdict"])

    try:
        arbor.fixed_point_table(2, catalog="nope")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown catalog entry accepted")

    print("ok")


if __name__ == "__main__":
    main()
