"""Smoke test of the Python bindings: build with `maturin develop -m crates/python/Cargo.toml`, then run."""

import json

import qschubert_py as qs

two_lines = qs.catalog("two_lines")
m = two_lines.representation
assert m.rank_vector == [2, 2]
assert len(m.cells([1, 1])) == 4

reports = m.count([1, 1], primes=[2, 3, 5])
for r in reports:
    q = r["prime"]
    assert [c["count"] for c in r["cells"]] == [1, q, 0, q], r
    assert r["total"] == 2 * q + 1

assert m.counting_polynomial([1, 1])["polynomial"] == "2*x + 1"
assert m.euler_characteristic([1, 1]) == 3

ex = qs.catalog("ex_4_5_1")
verdict = ex.hypothesis_h()
assert verdict["verdict"] == "fail"
assert {"triple": ["gamma", "1", "4"], "type": "T5"} in verdict["triples"]
eqs = ex.equations("{3,4}")
assert sorted(e["text"] for e in eqs["eqs"]) == ["w_{1,3} - w_{2,4}", "w_{1,3}*w_{2,4}"]

q = qs.Quiver(["1", "2"], [("a", "1", "2")])
n = qs.Representation(q, [1, 1], [[[1]]])
assert n.count([1, 1], primes=[7])[0]["total"] == 1
assert qs.Representation.from_json(n.to_json()).to_json() == n.to_json()

try:
    qs.catalog("flag", [4]).representation.count([1, 2, 3], primes=[31], budget=10)
except qs.BudgetExceeded:
    pass
else:
    raise AssertionError("budget was not enforced")

code, out, _ = qs.run_cli(["poly", "--catalog", "two_lines", "--dim-vector", "1,1"])
assert code == 0 and out.strip() == "2*x + 1"
code, out, _ = qs.run_cli(["hypothesis-h", "--catalog", "ex_4_5_1", "--json"])
assert code == 1 and json.loads(out)["verdict"] == "fail"

print("python smoke test passed")
