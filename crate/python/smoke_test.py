"""Smoke test for the fusionlab_py extension module.

Build and install it first, e.g. `pip install ./crates/python` (maturin) or
`cargo build --release -p fusionlab-py --features extension-module` and copy
target/release/libfusionlab_py.so next to this script as fusionlab_py.so.
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import fusionlab_py as fl


def main() -> None:
    s4 = fl.Group("S4")
    assert s4.order == 24 and s4.degree == 4

    doc = fl.Group.from_generators(4, [[[1, 2, 3, 4]], [[1, 2]]])
    assert doc.order == 24
    assert fl.Group(doc.to_json()).order == 24

    f = fl.FusionSystem(s4, 2)
    assert f.sylow_order == 8
    assert f.is_constrained()
    assert f.essential_orders() == [4]
    assert len(f.classify()) == f.num_subgroups

    triv = fl.Module.trivial(s4, 2)
    h = fl.group_cohomology(triv, 2)
    assert f.stable_dims(triv, 2, "all") == h
    assert f.stable_dims(triv, 2, "centric") == h
    assert f.stable_dims(triv, 2, "centric", exhaustive=True) == h
    assert f.nerve_dims(triv, 2) == h
    assert f.nerve_dims(triv, 2, category="linking") == h

    s3 = fl.Group("S3")
    sign = fl.Module.sign(s3, 3)
    f3 = fl.FusionSystem(s3, 3)
    assert fl.group_cohomology(sign, 3) == f3.stable_dims(sign, 3) == f3.nerve_dims(sign, 3)

    assert "S4@2" in fl.corpus_instances()
    assert "cartan-eilenberg" in fl.check_names()
    rep = fl.run_check("coprime", "S3@3", twisted=True, max_degree=3)
    assert rep["verdict"] == "pass", rep
    rep = fl.run_check("theorem-a", "S3@3", twisted=True, max_degree=1)
    assert rep["verdict"] == "hypothesis-failed", rep

    spec = {"check": "grodal", "instance": "S4@2", "module": "twisted", "max_degree": 2}
    assert fl.run_check_json(json.dumps(spec))["verdict"] == "pass"
    suite = fl.run_suite(json.dumps({"checks": []}))
    assert suite["exit_code"] == 0 and suite["reports"] == []

    twisted = fl.Module.corpus("S4@2", twisted=True)
    assert twisted.dim == 2 and twisted.prime == 2
    again = fl.Module.from_json(s4, 2, twisted.to_json())
    assert again.dim == 2

    try:
        fl.Group("nonsense")
    except ValueError:
        pass
    else:
        raise AssertionError("bad group name accepted")

    print("fusionlab_py smoke test passed")


if __name__ == "__main__":
    main()
