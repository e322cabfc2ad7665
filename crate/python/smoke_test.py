#!/usr/bin/env python3
"""Smoke test for the freegb Python module.

Builds nothing itself: it expects `cargo build -p freegb-py` (or --release)
to have produced target/<profile>/libfreegb.so, copies it next to a temp
directory as freegb.so, and drives the bindings end to end.
"""

import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / "release" / "libfreegb.so",
        ROOT / "target" / "debug" / "libfreegb.so",
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit("build the bindings first: cargo build -p freegb-py")
    so = max(built, key=lambda p: p.stat().st_mtime)
    tmp = Path(tempfile.mkdtemp(prefix="freegb-smoke-"))
    shutil.copy2(so, tmp / "freegb.so")
    sys.path.insert(0, str(tmp))
    import freegb  # noqa: E402

    return freegb


FIB_PROBLEM = """\
vars x y
field Q
order deglex x y
modorder dopot left
gens
xyx - xy - y
end
bound sig-degree 8
"""


def main():
    freegb = load_module()

    failures = freegb.selftest(fib=20, recursion=8, spoly=4)
    assert failures == [], f"selftest failures: {failures}"

    problem = freegb.Problem(FIB_PROBLEM)
    assert problem.variables == ["x", "y"]
    assert problem.generators == ["xyx - xy - y"]

    basis = problem.gb()
    assert len(basis) == 3, basis.elements()
    elements = basis.elements()
    assert elements[0] == ("1*e1*1", "xyx - xy - y")
    assert elements[1] == ("1*e1*yx", "xy^2x + y^2x - 2xy^2 - y^2")
    assert elements[2] == ("xy*e1*yx", "xy^3x + 1/2y^3x - 3/2xy^3 - y^3")
    assert basis.syzygies() == ["xyx*e1*1", "xyx^2*e1*1", "1*e1*yxyx"]

    modular, transcript = problem.gb_modular(seed=42, threads=2)
    assert modular.render() == basis.render(), "modular and direct outputs differ"
    assert "verify mode=exact verdict=pass" in transcript

    ok, report = problem.verify(basis)
    assert ok, report

    # a corrupted coefficient must be rejected
    broken_text = basis.render().replace("- 2xy^2", "- 3xy^2")
    broken = problem.parse_basis(broken_text)
    ok, report = problem.verify(broken)
    assert not ok and report, "corruption was not detected"

    # a deeper bound extends the same basis
    deeper = problem.gb(sig_degree=12)
    assert len(deeper) == 6
    assert deeper.elements()[:3] == elements

    # reconstruction helpers
    assert freegb.crt_combine([3, 2], [5, 7]) == "23"
    assert freegb.farey_reconstruct(23, 35) == ("-1", "3")
    assert freegb.farey_reconstruct(3, 7) is None

    print("smoke test passed")


if __name__ == "__main__":
    main()
