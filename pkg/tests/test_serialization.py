import json
from fractions import Fraction

import pytest

from hamca.conservation import iter_pair_stats
from hamca.dynamics import evolve
from hamca.errors import ModelValidationError
from hamca.gaussian import GaussInt, GaussMatrix, GaussVector
from hamca.models import build_hamiltonian, make_cyclic_model
from hamca.serialization import (
    format_float,
    format_gauss,
    load_gauss_vector,
    load_model,
    load_trajectory,
    parse_gauss,
    parse_gauss_vector,
    read_trajectory_stream,
    save_model,
    write_conservation_csv,
    write_cycle_csv,
    write_trajectory,
)

E = GaussVector.of


class TestGaussLiterals:
    @pytest.mark.parametrize(
        "text,value",
        [
            ("0", GaussInt(0)),
            ("-3", GaussInt(-3)),
            ("i", GaussInt(0, 1)),
            ("-i", GaussInt(0, -1)),
            ("+i", GaussInt(0, 1)),
            ("2i", GaussInt(0, 2)),
            ("-2i", GaussInt(0, -2)),
            ("1+i", GaussInt(1, 1)),
            ("1-i", GaussInt(1, -1)),
            ("4-7i", GaussInt(4, -7)),
            (" -12+40i ", GaussInt(-12, 40)),
            ("123456789012345678901234567890", GaussInt(123456789012345678901234567890)),
        ],
    )
    def test_parse(self, text, value):
        assert parse_gauss(text) == value

    @pytest.mark.parametrize("text", ["", "x", "1+", "i2", "1 2", "2.5", "--3"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_gauss(text)

    def test_round_trip_through_str(self):
        for z in (GaussInt(0), GaussInt(5, -3), GaussInt(0, 7), GaussInt(-1, -1)):
            assert parse_gauss(format_gauss(z)) == z

    def test_vector_literal(self):
        assert parse_gauss_vector("1-i, 0, 2i") == E((1, -1), 0, (0, 2))
        with pytest.raises(ValueError):
            parse_gauss_vector("")


class TestVectorFile:
    def test_mixed_component_forms(self, tmp_path):
        path = tmp_path / "v.json"
        path.write_text(json.dumps(["1-i", [2, 3], 5]))
        assert load_gauss_vector(path) == E((1, -1), (2, 3), 5)

    def test_rejects_garbage(self, tmp_path):
        path = tmp_path / "v.json"
        path.write_text(json.dumps({"not": "a list"}))
        with pytest.raises(ValueError):
            load_gauss_vector(path)


class TestModelFile:
    def test_round_trip(self, tmp_path):
        spec = make_cyclic_model(5)
        path = tmp_path / "model.json"
        save_model(spec, path)
        assert load_model(path) == spec

    def test_rejects_invalid_symmetry(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"dim": 2, "S": [[0, 1], [2, 0]], "A": [[0, 0], [0, 0]]}))
        with pytest.raises(ModelValidationError):
            load_model(path)

    def test_rejects_non_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("not json at all {")
        with pytest.raises(ModelValidationError):
            load_model(path)


class TestTrajectoryFile:
    def test_round_trip_exact(self, tmp_path):
        traj = evolve(E(1, 0), E(0, 1), make_cyclic_model(2), 7, l=0.25)
        path = tmp_path / "traj.jsonl"
        write_trajectory(traj, path)
        again = load_trajectory(path)
        assert list(again) == list(traj)
        assert again.model == traj.model
        assert again.l == traj.l

    def test_huge_magnitudes_survive(self, tmp_path):
        big = 10**120 + 9
        spec = make_cyclic_model(2)
        traj = evolve(E((big, -big), 1), E(0, (3, big)), spec, 3)
        path = tmp_path / "big.jsonl"
        write_trajectory(traj, path)
        again = load_trajectory(path)
        assert list(again) == list(traj)

    def test_integers_are_decimal_strings(self, tmp_path):
        traj = evolve(E(1, 0), E(0, 1), make_cyclic_model(2), 2)
        path = tmp_path / "traj.jsonl"
        write_trajectory(traj, path)
        lines = path.read_text().splitlines()
        rec = json.loads(lines[1])
        assert all(isinstance(v, str) for v in rec["re"] + rec["im"])

    def test_byte_identical_rewrites(self, tmp_path):
        traj = evolve(E(1, 0), E(0, 1), make_cyclic_model(2), 5)
        p1, p2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        write_trajectory(traj, p1)
        write_trajectory(traj, p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_streaming_reader(self, tmp_path):
        traj = evolve(E(1, 0), E(0, 1), make_cyclic_model(2), 9)
        path = tmp_path / "traj.jsonl"
        write_trajectory(traj, path)
        model, l, stream = read_trajectory_stream(path)
        assert model == traj.model
        count = 0
        for n, psi in stream:
            assert psi == traj[n]
            count += 1
        assert count == len(traj)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("")
        with pytest.raises(ValueError):
            load_trajectory(path)


class TestCsv:
    def test_float_formatting(self):
        assert format_float(0.1) == "0.10000000000000001"
        assert format_float(1.0) == "1"
        assert format_float(2.5e-11) == "2.5000000000000001e-11"

    def test_conservation_csv_columns(self, tmp_path):
        traj = evolve(E(1, 0), E(1, 1), make_cyclic_model(2), 4)
        stats = list(iter_pair_stats(traj, GaussMatrix.identity(2)))
        path = tmp_path / "report.csv"
        with open(path, "w", newline="") as fh:
            write_conservation_csv(fh, 2, stats)
        lines = path.read_text().splitlines()
        assert lines[0] == "n,q_re,q_im,L,L_1,L_2,w_1,w_2"
        assert len(lines) == 1 + len(stats)
        first = lines[1].split(",")
        assert first[0] == "0"
        # q1 of (1,0),(1,1) is 2, L is 1, w_1 = 1
        assert first[1] == "2"
        assert first[3] == "1"
        assert first[4] == "1"

    def test_cycle_csv_blank_cells_for_superposed(self, tmp_path):
        from hamca.ontology import find_period
        from hamca.models import basis_state

        spec = make_cyclic_model(3)
        rep = find_period(basis_state(3, 1), basis_state(3, 1), spec, 20)
        path = tmp_path / "cycle.csv"
        with open(path, "w", newline="") as fh:
            write_cycle_csv(fh, [rep])
        lines = path.read_text().splitlines()
        assert lines[0].startswith("pair,period,ontological")
        assert any(",,," in line or line.endswith(",,") for line in lines[1:])
