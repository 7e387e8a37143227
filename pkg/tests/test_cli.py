import json

import numpy as np
import pytest

from gfusion import serialize, tolerances
from gfusion.cli import main
from gfusion.frames import ControlPair, frame_operator

from conftest import scaled_partition_family


@pytest.fixture
def partition_inputs(tmp_path):
    """Family with exact bounds (2, 5), identity controls, identity k."""
    fam = scaled_partition_family(4, (2.0, 5.0))
    fam_path = tmp_path / "family.json"
    fam_path.write_text(serialize.dumps(serialize.family_to_dict(fam)))
    cp_path = tmp_path / "control.json"
    cp_path.write_text(
        serialize.dumps(serialize.control_pair_to_dict(ControlPair.identity(4)))
    )
    k_path = tmp_path / "k.json"
    k_path.write_text(serialize.dumps(serialize.operator_to_dict(np.eye(4))))
    return fam, fam_path, cp_path, k_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


class TestCheckFrame:
    def test_pass(self, capsys, partition_inputs):
        _, fam, cp, _ = partition_inputs
        code, rep = run(capsys, "check-frame", "--in", str(fam), "--control", str(cp))
        assert code == 0
        assert rep["is_frame"] is True
        assert abs(rep["bounds"]["lambda_min"] - 2.0) < 1e-9
        assert abs(rep["bounds"]["lambda_max"] - 5.0) < 1e-9

    def test_out_file(self, tmp_path, capsys, partition_inputs):
        _, fam, cp, _ = partition_inputs
        out = tmp_path / "report.json"
        code = main(
            ["check-frame", "--in", str(fam), "--control", str(cp), "--out", str(out)]
        )
        assert code == 0
        rep = json.loads(out.read_text())
        assert rep["command"] == "check-frame"
        assert capsys.readouterr().out == ""

    def test_deterministic_output(self, tmp_path, partition_inputs):
        _, fam, cp, _ = partition_inputs
        o1, o2 = tmp_path / "a.json", tmp_path / "b.json"
        for o in (o1, o2):
            assert main(["bounds", "--in", str(fam), "--control", str(cp), "--out", str(o)]) == 0
        assert o1.read_bytes() == o2.read_bytes()

    def test_parse_error_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        cp = tmp_path / "cp.json"
        cp.write_text(serialize.dumps(serialize.control_pair_to_dict(ControlPair.identity(2))))
        code = main(["check-frame", "--in", str(bad), "--control", str(cp)])
        assert code == 2
        assert "error" in capsys.readouterr().err


class TestAtomic:
    def test_identity_k(self, capsys, partition_inputs):
        _, fam, cp, k = partition_inputs
        code, rep = run(
            capsys, "atomic", "--in", str(fam), "--control", str(cp), "--k", str(k)
        )
        assert code == 0
        assert rep["is_atomic"] is True
        assert rep["coefficient_residual"] <= 1e-8
        assert abs(rep["lower_bound"] - 2.0) < 1e-9


class TestConstruct:
    def test_direct_sum(self, tmp_path, capsys, partition_inputs):
        _, fam, cp, k = partition_inputs
        code, rep = run(
            capsys,
            "construct", "direct-sum",
            "--in", str(fam), "--in", str(fam),
            "--control", str(cp), "--control", str(cp),
            "--k", str(k), "--k", str(k),
        )
        assert code == 0
        assert rep["all_hypotheses_pass"] is True
        assert abs(rep["measured"]["lambda_min"] - 2.0) < 1e-9
        assert abs(rep["measured"]["lambda_max"] - 5.0) < 1e-9
        assert rep["family_out"]["ambient_dim"] == 8


class TestPairAndResolutions:
    def test_pair_op_adjoint(self, capsys, partition_inputs):
        _, fam, cp, _ = partition_inputs
        code, rep = run(
            capsys, "pair-op", "--in", str(fam), "--in", str(fam), "--control", str(cp)
        )
        assert code == 0
        assert rep["adjoint_residual"] <= 1e-12

    def test_resolutions(self, capsys, partition_inputs):
        _, fam, cp, _ = partition_inputs
        code, rep = run(capsys, "resolutions", "--in", str(fam), "--control", str(cp))
        assert code == 0
        assert rep["right_multiplied"]["converged"] is True
        assert rep["left_multiplied"]["converged"] is True
        assert rep["right_multiplied"]["term_count"] == 2


class TestThm:
    def test_41(self, capsys, partition_inputs):
        _, fam, cp, _ = partition_inputs
        code, rep = run(capsys, "thm", "4.1", "--in", str(fam), "--control", str(cp))
        assert code == 0
        assert rep["certified"] is True
        assert rep["predicted_lower"] <= rep["lower"] + 1e-9
        assert rep["upper"] <= rep["predicted_upper"] + 1e-9

    def test_42(self, tmp_path, capsys):
        fam = scaled_partition_family(4, (2.0, 1.5))
        s = frame_operator(fam, ControlPair.identity(4))
        cp = ControlPair(np.eye(4), np.linalg.inv(s))
        fam_path = tmp_path / "f.json"
        fam_path.write_text(serialize.dumps(serialize.family_to_dict(fam)))
        cp_path = tmp_path / "c.json"
        cp_path.write_text(serialize.dumps(serialize.control_pair_to_dict(cp)))
        code, rep = run(capsys, "thm", "4.2", "--in", str(fam_path), "--control", str(cp_path))
        assert code == 0
        assert rep["is_frame"] is True
        assert abs(rep["predicted_lower"] - 0.5) < 1e-12

    def test_44(self, tmp_path, capsys):
        fam = scaled_partition_family(4, (0.5, 2.0))
        fam_path = tmp_path / "f.json"
        fam_path.write_text(serialize.dumps(serialize.family_to_dict(fam)))
        cp_path = tmp_path / "c.json"
        cp_path.write_text(
            serialize.dumps(serialize.control_pair_to_dict(ControlPair.identity(4)))
        )
        code, rep = run(
            capsys, "thm", "4.4",
            "--in", str(fam_path), "--in", str(fam_path), "--control", str(cp_path),
        )
        assert code == 0
        assert abs(rep["m"] - 0.5) < 1e-9
        assert abs(rep["predicted_lower"] - 0.125) < 1e-9

    def test_perturb(self, tmp_path, capsys):
        fam = scaled_partition_family(4, (1.0, 1.0))
        fam_path = tmp_path / "f.json"
        fam_path.write_text(serialize.dumps(serialize.family_to_dict(fam)))
        cp_path = tmp_path / "c.json"
        cp_path.write_text(
            serialize.dumps(serialize.control_pair_to_dict(ControlPair.identity(4)))
        )
        code, rep = run(
            capsys, "thm", "perturb",
            "--in", str(fam_path), "--in", str(fam_path), "--control", str(cp_path),
            "--lambda1", "0.0", "--lambda2", "0.0",
        )
        assert code == 0
        assert rep["hyp_certified"] is True
        assert rep["worst_sample_slack"] >= -1e-12


class TestFourierDemo:
    def test_reference(self, capsys):
        code, rep = run(
            capsys, "fourier-demo",
            "--nmax", "8", "--m", "3", "--alpha", "0.5", "--beta", "0.5",
        )
        assert code == 0
        assert rep["sandwich_ok"] is True
        assert abs(rep["a_opt"] - 0.25) < 1e-9

    def test_invalid_params_exit_2(self, capsys):
        code = main(
            ["fourier-demo", "--nmax", "4", "--m", "9", "--alpha", "0.5", "--beta", "0.5"]
        )
        assert code == 2


class TestRandom:
    def test_writes_files(self, tmp_path, capsys):
        out = tmp_path / "inst"
        code = main(["random", "--seed", "42", "--dim", "5", "--items", "3",
                     "--out", str(out)])
        assert code == 0
        fam = serialize.family_from_dict(serialize.load_json(out / "family.json"))
        cp = serialize.control_pair_from_dict(serialize.load_json(out / "control.json"))
        assert fam.ambient_dim == 5
        assert cp.t.shape == (5, 5)

    def test_seed_reproducible(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            assert main(["random", "--seed", "7", "--out", str(out)]) == 0
        assert (a / "family.json").read_bytes() == (b / "family.json").read_bytes()

    def test_near_identity_pair_files(self, tmp_path):
        out = tmp_path / "p"
        code = main(["random", "--seed", "1", "--structure", "near-identity-pair",
                     "--out", str(out)])
        assert code == 0
        assert (out / "family2.json").exists()
        assert (out / "pair_control.json").exists()


class TestTolOverride:
    def test_unknown_tol_exit_2(self, capsys, partition_inputs):
        _, fam, cp, _ = partition_inputs
        code = main(["bounds", "--in", str(fam), "--control", str(cp),
                     "--tol", "nope=1"])
        assert code == 2

    def test_override_applies(self, capsys, partition_inputs):
        _, fam, cp, _ = partition_inputs
        saved = tolerances.TOL_PSD
        try:
            # absurdly large PSD floor makes the frame verdict fail
            code, rep = run(
                capsys, "check-frame", "--in", str(fam), "--control", str(cp),
                "--tol", "tol_psd=0.9",
            )
            assert code == 1
            assert rep["is_frame"] is False
        finally:
            tolerances.TOL_PSD = saved
