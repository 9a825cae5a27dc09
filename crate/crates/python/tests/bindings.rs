use pyo3::prelude::*;
use pyo3::types::PyDict;

#[test]
fn module_answers_from_python() {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(qschubert_py::qschubert_py)(py);
        let locals = PyDict::new(py);
        locals.set_item("qs", module).unwrap();
        py.run(
            cr#"
m = qs.catalog("two_lines").representation
assert m.cells([1, 1]) == ["{b1,b3}", "{b2,b3}", "{b1,b4}", "{b2,b4}"], m.cells([1, 1])
assert [r["total"] for r in m.count([1, 1], primes=[2, 3])] == [5, 7]
assert m.counting_polynomial([1, 1])["polynomial"] == "2*x + 1"
v = qs.catalog("ex_4_5_1").hypothesis_h()
assert v["verdict"] == "fail" and v["pair"] == ["4", "4"]
try:
    qs.catalog("nope")
except ValueError:
    pass
else:
    raise AssertionError("unknown entry accepted")
"#,
            None,
            Some(&locals),
        )
        .unwrap();
    });
}
