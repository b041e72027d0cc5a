import json
import os
import sys

sys.path.insert(0, os.environ["PYELLBETA_DIR"])

import pyellbeta  # noqa: E402


def main():
    assert pyellbeta.precision_policy(0) == 11
    assert pyellbeta.precision_policy(3) == 15

    series = json.loads(pyellbeta.eisenstein_json(1, 8))
    coeffs = series["coeffs"]
    assert [c["re"] for c in coeffs[:4]] == ["1", "6", "0", "6"]

    ok, _ = pyellbeta.admissible(1, 2, 4, 0, "simple")
    assert ok
    bad, reason = pyellbeta.admissible(1, 2, 5, 0, "simple")
    assert not bad and reason

    catalog = json.loads(pyellbeta.catalog_json(12))
    assert len(catalog) == 9
    assert any(b["name"] == "beta_1" for b in catalog)

    out = json.loads(pyellbeta.finv_json(3, 0, 1, 0, "simple"))
    assert out["match"] is True
    assert out["class"]["index_weight"] == 8

    print("smoke test passed")


if __name__ == "__main__":
    main()
