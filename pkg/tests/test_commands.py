"""Tests for the CLI command implementations."""

import io
from pathlib import Path

import pytest

from qalgo.commands import (
    EXIT_CHECK_FAILED,
    EXIT_EXHAUSTED,
    EXIT_OK,
    EXIT_PRECONDITION,
    EXIT_USAGE,
    cmd_deutsch,
    cmd_orders,
    cmd_qft,
    cmd_shor,
    cmd_simulate,
    format_probability,
)
from qalgo.config import QalgoConfig
from qalgo.numtheory import order_bruteforce

DATA = Path(__file__).parent / "data"


def _run(command, *args: object, **kwargs: object) -> tuple[int, str, str]:
    """Run a command against in-memory streams."""
    out, err = io.StringIO(), io.StringIO()
    code = command(*args, out=out, err=err, **kwargs)
    return code, out.getvalue(), err.getvalue()


def _make_circuit(tmp_path: Path, text: str) -> Path:
    """Write a circuit file and return its path."""
    path = tmp_path / "circuit.qc"
    path.write_text(text)
    return path


class TestFormatProbability:
    """Tests for format_probability()."""

    def test_rounds_float_noise(self) -> None:
        """Test 0.4999999999999999 prints as 0.5."""
        assert format_probability(0.4999999999999999) == "0.5"

    def test_one(self) -> None:
        """Test 1 prints as 1.0."""
        assert format_probability(1) == "1.0"


class TestSimulate:
    """Tests for cmd_simulate()."""

    def test_bell_report_matches_golden(self) -> None:
        """Test the Bell circuit report byte for byte."""
        code, out, err = _run(cmd_simulate, DATA / "bell.qc")
        assert code == EXIT_OK
        assert err == ""
        assert out == (DATA / "bell_report.txt").read_text()

    def test_empty_circuit(self, tmp_path: Path) -> None:
        """Test a gate-free circuit reports |0> with probability 1."""
        path = _make_circuit(tmp_path, "QUBITS 1\n")
        code, out, _ = _run(cmd_simulate, path)
        assert code == EXIT_OK
        assert out.splitlines()[1:] == ["0 1.0"]

    def test_shots_add_counts(self) -> None:
        """Test shots > 0 appends counts that sum to the shots."""
        config = QalgoConfig(shots=1000, seed=7)
        code, out, _ = _run(cmd_simulate, DATA / "bell.qc", config=config)
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "# qubits=2 shots=1000 seed=7"
        counts = [int(line.split()[2]) for line in lines[1:]]
        assert [line.split()[0] for line in lines[1:]] == ["00", "11"]
        assert sum(counts) == 1000
        assert all(300 < count < 700 for count in counts)

    def test_same_seed_same_counts(self) -> None:
        """Test two runs with one seed print identical reports."""
        config = QalgoConfig(shots=200, seed=3)
        first = _run(cmd_simulate, DATA / "bell.qc", config=config)
        second = _run(cmd_simulate, DATA / "bell.qc", config=config)
        assert first == second

    def test_parse_error(self, tmp_path: Path) -> None:
        """Test a bad circuit exits 1 with the line on stderr."""
        path = _make_circuit(tmp_path, "QUBITS 1\nFOO 0\n")
        code, out, err = _run(cmd_simulate, path)
        assert code == EXIT_USAGE
        assert out == ""
        assert "line 2" in err

    def test_negative_shots(self) -> None:
        """Test shots < 0 exits 1 without a report."""
        config = QalgoConfig(shots=-5)
        code, out, err = _run(cmd_simulate, DATA / "bell.qc", config=config)
        assert code == EXIT_USAGE
        assert out == ""
        assert "non-negative" in err

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test an unreadable path exits 1."""
        code, _, err = _run(cmd_simulate, tmp_path / "absent.qc")
        assert code == EXIT_USAGE
        assert err.startswith("error:")


class TestDeutsch:
    """Tests for cmd_deutsch()."""

    @pytest.mark.parametrize(
        ("f_spec", "verdict"),
        [
            ("00", "constant"),
            ("11", "constant"),
            ("01", "balanced"),
            ("10", "balanced"),
        ],
    )
    def test_verdicts(self, f_spec: str, verdict: str) -> None:
        """Test each function table gets the right verdict."""
        code, out, _ = _run(cmd_deutsch, f_spec)
        lines = out.splitlines()
        assert code == EXIT_OK
        assert lines[0] == f"# f={f_spec}"
        assert lines[1] == verdict

    def test_constant_distribution(self) -> None:
        """Test a constant f puts all weight on outcome 0."""
        _, out, _ = _run(cmd_deutsch, "00")
        assert out.splitlines()[2] == "0 1.0"

    def test_balanced_distribution(self) -> None:
        """Test a balanced f puts all weight on outcome 1."""
        _, out, _ = _run(cmd_deutsch, "01")
        assert out.splitlines()[3] == "1 1.0"

    @pytest.mark.parametrize("f_spec", ["0", "012", "ab", "2 1"])
    def test_bad_spec(self, f_spec: str) -> None:
        """Test anything but two bits exits 1."""
        code, out, err = _run(cmd_deutsch, f_spec)
        assert code == EXIT_USAGE
        assert out == ""
        assert "two bits" in err


class TestQft:
    """Tests for cmd_qft()."""

    def test_counts(self) -> None:
        """Test n=3 reports 3 H, 3 CPHASE and 1 SWAP."""
        code, out, _ = _run(cmd_qft, 3)
        assert code == EXIT_OK
        assert out.splitlines() == [
            "# qft n=3 check=False primitive=False",
            "H:3 CPHASE:3 SWAP:1",
        ]

    def test_primitive_counts(self) -> None:
        """Test the primitive circuit uses only H, T and CNOT."""
        _, out, _ = _run(cmd_qft, 3, primitive=True)
        names = {field.split(":")[0] for field in out.split("\n")[1].split()}
        assert names <= {"H", "T", "CNOT", "SWAP"}
        assert "CPHASE" not in names

    def test_check_one_qubit(self) -> None:
        """Test n=1 passes with zero deviation and F_1 = H."""
        code, out, _ = _run(cmd_qft, 1, check=True)
        assert code == EXIT_OK
        assert out.splitlines()[1:] == ["deviation 0", "F_1 = H", "pass"]

    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_check_passes(self, n: int) -> None:
        """Test the circuit matches F_n within tolerance."""
        code, out, _ = _run(cmd_qft, n, check=True)
        assert code == EXIT_OK
        assert out.splitlines()[-1] == "pass"

    def test_check_primitive(self) -> None:
        """Test the primitive circuit also passes the check."""
        code, _, _ = _run(cmd_qft, 4, check=True, primitive=True)
        assert code == EXIT_OK

    def test_check_fails_on_negative_tolerance(self) -> None:
        """Test a deviation above the tolerance exits 4."""
        config = QalgoConfig(tolerance=-1.0)
        code, out, _ = _run(cmd_qft, 2, check=True, config=config)
        assert code == EXIT_CHECK_FAILED
        assert out.splitlines()[-1] == "fail"

    def test_check_too_large(self) -> None:
        """Test --check above 10 qubits exits 2."""
        code, _, err = _run(cmd_qft, 11, check=True)
        assert code == EXIT_PRECONDITION
        assert "at most 10" in err

    def test_zero_qubits(self) -> None:
        """Test n=0 exits 1."""
        code, _, _ = _run(cmd_qft, 0)
        assert code == EXIT_USAGE


class TestShor:
    """Tests for cmd_shor()."""

    def test_factors_fifteen(self) -> None:
        """Test N=15 prints 3 5 and a passing check."""
        config = QalgoConfig(seed=1)
        code, out, _ = _run(cmd_shor, 15, config=config)
        lines = out.splitlines()
        assert code == EXIT_OK
        assert lines[0] == "# N=15 seed=1 max_attempts=32"
        assert "factors 3 5" in lines
        assert lines[-1] == "check 3*5=15 ok"
        assert all(line.startswith("attempt ") for line in lines[1:-2])

    def test_golden_seed_one(self) -> None:
        """Test the N=15 seed 1 report byte for byte."""
        code, out, err = _run(cmd_shor, 15, config=QalgoConfig(seed=1))
        assert code == EXIT_OK
        assert err == ""
        assert out == (DATA / "shor_15_seed1.txt").read_text()

    def test_reproducible(self) -> None:
        """Test one seed gives byte-identical reports."""
        config = QalgoConfig(seed=1)
        assert _run(cmd_shor, 15, config=config) == _run(
            cmd_shor, 15, config=config
        )

    @pytest.mark.parametrize("modulus", [15, 21])
    def test_many_seeds(self, modulus: int) -> None:
        """Test seeds 1..20 all factor N."""
        for seed in range(1, 21):
            code, out, _ = _run(cmd_shor, modulus, config=QalgoConfig(seed))
            assert code == EXIT_OK
            assert out.splitlines()[-1].endswith(" ok")

    @pytest.mark.parametrize("modulus", [16, 13, 9, 2])
    def test_rejected_modulus(self, modulus: int) -> None:
        """Test even, prime, prime-power and tiny N exit 2."""
        code, _, err = _run(cmd_shor, modulus)
        assert code == EXIT_PRECONDITION
        assert err.startswith("error:")

    def test_exhausted(self) -> None:
        """Test max_attempts=0 exits 3."""
        config = QalgoConfig(max_attempts=0)
        code, out, err = _run(cmd_shor, 15, config=config)
        assert code == EXIT_EXHAUSTED
        assert out.splitlines() == ["# N=15 seed=42 max_attempts=0"]
        assert err.startswith("error:")


class TestOrders:
    """Tests for cmd_orders()."""

    def test_orders_fifteen(self) -> None:
        """Test every order agrees with brute force."""
        code, out, _ = _run(cmd_orders, 15, config=QalgoConfig(seed=5))
        lines = out.splitlines()
        assert code == EXIT_OK
        assert lines[0] == "# N=15 seed=5"
        bases = [int(line.split()[0]) for line in lines[1:]]
        assert bases == [1, 2, 4, 7, 8, 11, 13, 14]
        for line in lines[1:]:
            x, order = line.split()[:2]
            assert order == f"r={order_bruteforce(int(x), 15)}"

    def test_reproducible(self) -> None:
        """Test one seed gives identical tables."""
        config = QalgoConfig(seed=9, workers=2)
        assert _run(cmd_orders, 21, config=config) == _run(
            cmd_orders, 21, config=config
        )

    def test_small_modulus(self) -> None:
        """Test N < 3 exits 2."""
        code, _, _ = _run(cmd_orders, 2)
        assert code == EXIT_PRECONDITION

    def test_register_over_cap(self) -> None:
        """Test a configured max_qubits below the register exits 2."""
        config = QalgoConfig(max_qubits=10)
        code, out, err = _run(cmd_orders, 15, config=config)
        assert code == EXIT_PRECONDITION
        assert out == ""
        assert "12 qubits" in err

    @pytest.mark.parametrize("command", [cmd_simulate, cmd_shor, cmd_orders])
    def test_negative_seed_exits_one(self, command) -> None:
        """Test every seeded command rejects a negative seed with 1."""
        arg = DATA / "bell.qc" if command is cmd_simulate else 15
        code, _, err = _run(command, arg, config=QalgoConfig(seed=-1))
        assert code == EXIT_USAGE
        assert err.startswith("error:")
