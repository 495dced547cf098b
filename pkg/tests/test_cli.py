"""CLI: exit codes, shipped corpus, report round-trips, witness replay."""

import os

from koszulcat.cli import main
from koszulcat.monoid import Element
from koszulcat.problemfile import parse_problem_file, parse_problem_text
from koszulcat.report import GradedReport

PROBLEMS = os.path.join(os.path.dirname(__file__), "..", "problems")


def pfile(name):
    return os.path.join(PROBLEMS, name)


BROKEN = """
field Q
backend trivial
monoid A
  basis z1 z2 z3
  unit 1*z1
  mul z1 z1 = 1*z1
  mul z1 z2 = 1*z2
  mul z1 z3 = 1*z3
  mul z2 z1 = 1*z2
  mul z3 z1 = 1*z3
  mul z2 z2 = 3*z1 + 3*z3
  mul z2 z3 = 3*z2
  mul z3 z2 = 2*z2
  mul z3 z3 = 2*z1 + 1*z3
end
main A
"""


def test_validate_shipped_corpus():
    for name in ("trivial_q.kz", "dual_numbers.kz", "s3_group_algebra.kz",
                 "poly_xy.kz", "c2conv.kz"):
        assert main(["validate", pfile(name), "--max-degree", "2"]) == 0


def test_validate_broken_monoid_exits_one(tmp_path):
    path = tmp_path / "broken.kz"
    path.write_text(BROKEN)
    assert main(["validate", str(path)]) == 1


def test_parse_error_exits_two(tmp_path):
    path = tmp_path / "bad.kz"
    path.write_text("field Q\nbackend trivial\nfrobnicate\n")
    assert main(["validate", str(path)]) == 2


def test_missing_file_exits_two():
    assert main(["validate", "no_such_file.kz"]) == 2


def test_field_flag_mismatch_exits_two():
    assert main(["validate", pfile("trivial_q.kz"), "--field", "F 5"]) == 2


def test_koszul_regular_instance_passes(tmp_path):
    report_path = tmp_path / "r.json"
    code = main(["koszul", pfile("poly_xy.kz"), "--max-degree", "4",
                 "--report", str(report_path)])
    assert code == 0
    rep = GradedReport.from_json(report_path.read_text())
    assert rep.all_passed


def test_koszul_nonregular_exits_one():
    assert main(["koszul", pfile("dual_numbers.kz")]) == 1


def test_koszul_noncentral_alpha_exits_one():
    assert main(["koszul", pfile("s3_group_algebra.kz"), "--alpha", "t12"]) == 1


def test_regular_check_verbs():
    assert main(["regular-check", pfile("poly_xy.kz"), "--alpha", "x,y",
                 "--max-degree", "3"]) == 0
    assert main(["regular-check", pfile("dual_numbers.kz"), "--alpha", "xbar"]) == 1


def test_commutant_verb():
    assert main(["commutant", pfile("s3_group_algebra.kz")]) == 0


def test_tensor_idem_verb():
    assert main(["tensor-idem", pfile("trivial_q.kz")]) == 0
    assert main(["tensor-idem", pfile("c2conv.kz")]) == 0
    assert main(["tensor-idem", pfile("dual_numbers.kz")]) == 1


def test_hh_verb(tmp_path):
    report_path = tmp_path / "hh.json"
    code = main(["hh", pfile("trivial_q.kz"), "-n", "2", "-p", "1",
                 "--max-degree", "3", "--report", str(report_path)])
    assert code == 0
    rep = GradedReport.from_json(report_path.read_text())
    dims = {e.degree: e.dim for e in rep.entries}
    assert dims[0] == 2 and dims[1] == 4


def test_hh_refuses_nonidempotent():
    assert main(["hh", pfile("dual_numbers.kz"), "-n", "1", "-p", "0",
                 "--max-degree", "2"]) == 1


def test_hh_window_zero_exits_two():
    assert main(["hh", pfile("trivial_q.kz"), "-n", "1", "-p", "0",
                 "--max-degree", "0"]) == 2


def test_syzygy_verb():
    assert main(["syzygy", pfile("trivial_q.kz"), "-n", "1", "--module", "Mt",
                 "--max-degree", "3"]) == 0
    assert main(["syzygy", pfile("poly_xy.kz"), "--module", "M",
                 "--max-degree", "3"]) == 0


def test_tensor_over_verb():
    assert main(["tensor-over", pfile("dual_numbers.kz"), "--module", "R,M"]) == 0


def test_report_roundtrip_and_determinism(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["koszul", pfile("poly_xy.kz"), "--max-degree", "4"]
    assert main(argv + ["--report", str(p1)]) == 0
    assert main(argv + ["--report", str(p2), "--threads", "2"]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    rep = GradedReport.from_json(p1.read_text())
    assert rep.to_json_str() + "\n" == p1.read_text()


def test_witness_replay(tmp_path):
    # the reported regularity witness must be nonzero and annihilated
    report_path = tmp_path / "w.json"
    main(["regular-check", pfile("dual_numbers.kz"), "--alpha", "xbar",
          "--report", str(report_path)])
    rep = GradedReport.from_json(report_path.read_text())
    cert = next(c for c in rep.certificates if c.name == "regular-sequence")
    wit = cert.witness["stages"][0]["witness"]
    problem = parse_problem_file(pfile("dual_numbers.kz"))
    subject = problem.build_subject(0)
    coords = tuple(subject.field.parse(v) for v in wit["coords"])
    elt = Element(wit["obj"], wit["degree"], coords)
    assert not elt.is_zero()
    alpha = subject.basis_element("xbar")
    product = subject.multiply(alpha, elt)
    assert product.is_zero()


def test_env_var_thread_fallback(monkeypatch, tmp_path):
    monkeypatch.setenv("KOSZULCAT_THREADS", "2")
    p = tmp_path / "env.json"
    assert main(["koszul", pfile("poly_xy.kz"), "--max-degree", "3",
                 "--report", str(p)]) == 0


def test_parse_problem_text_scalars():
    pf = parse_problem_text("""
field F 5
backend trivial
monoid A
  basis one
  unit 1*one
  mul one one = 1*one
end
main A
""")
    assert pf.field.char == 5
    subject = pf.build_subject(0)
    assert subject.unit == (1,)
