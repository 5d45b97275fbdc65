"""Shortest-length discovery: binary search with doubling over the decision
encodings, plus external solver process adaptation.

The decision predicate "a synchronizing word of length c exists" is monotone
in c, so after doubling to a SAT upper bound we binary-search the least SAT
c.  Every witness is re-verified against the automaton before it is reported;
a verification failure on an external path is a soundness error, never
silently accepted.
"""

from __future__ import annotations

import os
import subprocess
import tempfile
import time
from dataclasses import dataclass, field

from syncword import aspenc, satenc
from syncword.automaton import (
    Automaton,
    Word,
    cubic_length_bound,
    default_initial_bound,
    is_synchronizing_word,
)
from syncword.errors import SolverError, SoundnessError
from syncword.exact import check_synchronizable, shortest_sync_bfs

METHODS = ("bfs", "sat-internal", "sat-external", "asp1", "asp2", "asp1opt", "asp2opt")

SAT_CMD_ENV = "SYNCWORD_SAT_CMD"
ASP_CMD_ENV = "SYNCWORD_ASP_CMD"


@dataclass
class SearchConfig:
    method: str = "bfs"
    initial_c: int | None = None  # default: ceil(2*sqrt(n))
    solver_cmd: str | None = None  # template containing {file}
    time_budget: float | None = None  # seconds per solver call
    max_visited: int | None = None  # BFS visited-set cap
    legacy_syntax: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.initial_c is not None and self.initial_c < 1:
            raise ValueError("initial_c must be >= 1")

    def resolved_solver_cmd(self) -> str | None:
        if self.solver_cmd:
            return self.solver_cmd
        if self.method == "sat-external":
            return os.environ.get(SAT_CMD_ENV)
        if self.method.startswith("asp"):
            return os.environ.get(ASP_CMD_ENV)
        return None


@dataclass
class ProbeRecord:
    c: int
    verdict: str  # "sat" | "unsat"
    wall_time: float
    memory_kb: int | None = None


@dataclass
class SearchOutcome:
    length: int
    witness: Word
    calls: list[ProbeRecord] = field(default_factory=list)
    total_time: float = 0.0
    peak_memory_kb: int | None = None


@dataclass
class ExternalResult:
    stdout: str
    stderr: str
    returncode: int
    wall_time: float
    memory_kb: int | None


def run_external(payload: str, command_template: str, time_budget: float | None = None,
                 suffix: str = ".txt") -> ExternalResult:
    """Write payload to a temp file, run the solver command, capture output.

    The template must contain a "{file}" placeholder.  Nonzero exits are NOT
    errors here (SAT solvers exit 10/20); timeouts and empty output are.
    """
    if "{file}" not in command_template:
        raise SolverError(f"command template {command_template!r} lacks a {{file}} placeholder")
    with tempfile.NamedTemporaryFile("w", suffix=suffix, delete=False) as fh:
        fh.write(payload)
        path = fh.name
    try:
        cmd = command_template.replace("{file}", path)
        start = time.monotonic()
        try:
            proc = subprocess.run(
                cmd, shell=True, capture_output=True, text=True, timeout=time_budget
            )
        except subprocess.TimeoutExpired as exc:
            raise SolverError(f"solver timed out after {time_budget}s: {cmd}") from exc
        elapsed = time.monotonic() - start
        if not proc.stdout.strip():
            raise SolverError(
                f"solver produced no output (exit {proc.returncode}): {cmd}\n"
                f"stderr: {proc.stderr[:500]}"
            )
        memory_kb = _child_peak_memory_kb()
        return ExternalResult(proc.stdout, proc.stderr, proc.returncode, elapsed, memory_kb)
    finally:
        os.unlink(path)


def _child_peak_memory_kb() -> int | None:
    # Max RSS of reaped children where the platform exposes it; cumulative
    # across calls, so treat as a peak indicator, not a per-call figure.
    try:
        import resource

        return resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss
    except (ImportError, ValueError):
        return None


def parse_sat_solver_output(text: str) -> dict[int, bool] | None:
    """Parse the standard 's SATISFIABLE/UNSATISFIABLE' + v-line convention."""
    verdict = None
    vpayload: list[str] = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("s "):
            tag = stripped[2:].strip().upper()
            if tag == "SATISFIABLE":
                verdict = "sat"
            elif tag == "UNSATISFIABLE":
                verdict = "unsat"
        elif stripped.startswith("v ") or stripped == "v":
            vpayload.append(stripped[1:])
    if verdict is None:
        raise SolverError(f"no 's SATISFIABLE/UNSATISFIABLE' line in solver output:\n{text[:500]}")
    if verdict == "unsat":
        return None
    model = satenc.parse_model_literals(" ".join(vpayload))
    if not model:
        raise SolverError("satisfiable verdict but no v-line model in solver output")
    return model


def parse_asp_solver_output(text: str, expect_optimum: bool = False) -> list[str] | None:
    """Parse clingo-style output: the last 'Answer: i' block's atoms, or None
    for UNSATISFIABLE.  For optimization runs an optimality marker is
    required."""
    lines = text.splitlines()
    answer: list[str] | None = None
    saw_unsat = False
    saw_optimum = False
    for i, line in enumerate(lines):
        stripped = line.strip()
        if stripped.startswith("Answer:"):
            if i + 1 < len(lines):
                answer = lines[i + 1].split()
        elif "UNSATISFIABLE" in stripped:
            saw_unsat = True
        elif "OPTIMUM FOUND" in stripped:
            saw_optimum = True
    if saw_unsat and answer is None:
        return None
    if answer is None:
        raise SolverError(f"no answer set and no UNSATISFIABLE marker in output:\n{text[:500]}")
    if expect_optimum and not saw_optimum:
        raise SolverError("optimization run finished without an 'OPTIMUM FOUND' marker")
    return answer


def find_shortest(a: Automaton, cfg: SearchConfig) -> SearchOutcome | None:
    """Shortest synchronizing length under the configured method.

    Returns None (not synchronizable) without any solver call when the
    polynomial check fails.  Decision methods double c from the initial bound
    until SAT, then binary-search the least SAT c; opt methods re-emit with
    doubled c on unsatisfiability and read the length from the answer set.
    """
    if not check_synchronizable(a):
        return None
    start = time.monotonic()
    if a.n == 1:
        # The decision encodings cannot express c = 0; the answer is fixed.
        return SearchOutcome(0, (), [], time.monotonic() - start)
    if cfg.method == "bfs":
        res = shortest_sync_bfs(a, max_visited=cfg.max_visited)
        if res is None:  # pair check said synchronizable; BFS must agree
            raise SoundnessError("pair-automaton check and power-set BFS disagree")
        elapsed = time.monotonic() - start
        outcome = SearchOutcome(
            res.length, res.witness, [ProbeRecord(res.length, "sat", elapsed)], elapsed
        )
        return _verified(a, outcome, internal=True)
    if cfg.method.endswith("opt"):
        return _search_opt(a, cfg, start)
    return _search_decision(a, cfg, start)


def _verified(a: Automaton, outcome: SearchOutcome, internal: bool) -> SearchOutcome:
    if len(outcome.witness) != outcome.length or not is_synchronizing_word(a, outcome.witness):
        kind = "internal" if internal else "external solver"
        raise SoundnessError(
            f"decoded witness of length {len(outcome.witness)} failed re-verification "
            f"({kind} path)"
        )
    return outcome


def _decide(a: Automaton, c: int, cfg: SearchConfig) -> tuple[Word | None, ProbeRecord]:
    """One decision probe at bound c: (witness or None, probe record)."""
    t0 = time.monotonic()
    method = cfg.method
    if method == "sat-internal":
        cnf = satenc.encode_sat(a, c)
        model = satenc.solve_internal(cnf)
        word = None if model is None else satenc.decode_model(a, c, model)
        rec = ProbeRecord(c, "unsat" if word is None else "sat", time.monotonic() - t0)
        return word, rec
    cmd = cfg.resolved_solver_cmd()
    if cmd is None:
        raise SolverError(f"method {method!r} needs a solver command (flag or env var)")
    if method == "sat-external":
        payload = satenc.write_dimacs(satenc.encode_sat(a, c))
        result = run_external(payload, cmd, cfg.time_budget, suffix=".cnf")
        model = parse_sat_solver_output(result.stdout)
        word = None if model is None else satenc.decode_model(a, c, model)
    else:  # asp1 / asp2
        program = aspenc.emit(a, method, c, cfg.legacy_syntax)
        result = run_external(program.text, cmd, cfg.time_budget, suffix=".lp")
        atoms = parse_asp_solver_output(result.stdout)
        word = None if atoms is None else aspenc.decode_answer_set(program, atoms)[0]
    rec = ProbeRecord(c, "unsat" if word is None else "sat", result.wall_time, result.memory_kb)
    return word, rec


def _search_decision(a: Automaton, cfg: SearchConfig, start: float) -> SearchOutcome:
    n = a.n
    cap = max(1, cubic_length_bound(n)) if n > 1 else 1
    c = min(cfg.initial_c or default_initial_bound(n), cap)
    calls: list[ProbeRecord] = []

    # Doubling phase: find a SAT upper bound.
    sat_c: int | None = None
    sat_word: Word | None = None
    unsat_c = 0
    while True:
        word, rec = _decide(a, c, cfg)
        calls.append(rec)
        if word is not None:
            sat_c, sat_word = c, word
            break
        unsat_c = max(unsat_c, c)
        if c >= cap:
            # Synchronizable automata always have a word within the cubic
            # bound; reaching it UNSAT means the encoder or solver is broken.
            raise SoundnessError(
                f"no synchronizing word found up to the length bound {cap} "
                "for a synchronizable automaton"
            )
        c = min(2 * c, cap)

    # Binary search for the least SAT c in (unsat_c, sat_c].
    lo, hi = unsat_c, sat_c
    best_word = sat_word
    while hi - lo > 1:
        mid = (lo + hi) // 2
        word, rec = _decide(a, mid, cfg)
        calls.append(rec)
        if word is not None:
            hi, best_word = mid, word
        else:
            lo = mid
    assert best_word is not None
    # The encoding pads shorter words up to the bound; trim is not valid in
    # general, so re-probe is unnecessary: |best_word| == hi by construction.
    outcome = SearchOutcome(hi, best_word, calls, time.monotonic() - start)
    outcome.peak_memory_kb = max((r.memory_kb for r in calls if r.memory_kb), default=None)
    return _verified(a, outcome, internal=cfg.method == "sat-internal")


def _search_opt(a: Automaton, cfg: SearchConfig, start: float) -> SearchOutcome:
    cmd = cfg.resolved_solver_cmd()
    if cmd is None:
        raise SolverError(f"method {cfg.method!r} needs a solver command (flag or env var)")
    n = a.n
    cap = max(1, cubic_length_bound(n)) if n > 1 else 1
    c = min(cfg.initial_c or default_initial_bound(n), cap)
    calls: list[ProbeRecord] = []
    while True:
        program = aspenc.emit(a, cfg.method, c, cfg.legacy_syntax)
        t0 = time.monotonic()
        result = run_external(program.text, cmd, cfg.time_budget, suffix=".lp")
        atoms = parse_asp_solver_output(result.stdout, expect_optimum=True)
        if atoms is not None:
            word, shortest = aspenc.decode_answer_set(program, atoms)
            calls.append(ProbeRecord(c, "sat", result.wall_time, result.memory_kb))
            assert shortest is not None
            outcome = SearchOutcome(shortest, word, calls, time.monotonic() - start)
            outcome.peak_memory_kb = max(
                (r.memory_kb for r in calls if r.memory_kb), default=None
            )
            return _verified(a, outcome, internal=False)
        calls.append(ProbeRecord(c, "unsat", result.wall_time, result.memory_kb))
        if c >= cap:
            raise SoundnessError(
                f"optimization program unsatisfiable at the length bound {cap} "
                "for a synchronizable automaton"
            )
        c = min(2 * c, cap)
