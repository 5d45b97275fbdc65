"""SAT encoding of "a synchronizing word of length c exists", DIMACS I/O,
model decoding, and a small internal DPLL oracle for desk-scale checks.

The formula is the conjunction of six groups: exactly one symbol per step,
exactly one traced state per (start state, step), initial-state units,
transition propagation, exactly one sink, and all-states-reach-sink.  The
decision predicate is monotone in c (images only shrink), which the binary
search driver relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from syncword.automaton import Automaton, Word
from syncword.errors import DecodeError, ParseError, ResourceLimitError

Clause = list[int]


@dataclass(frozen=True)
class VarMap:
    """Fixed variable numbering for one (n, k, c) instance.

    X(l,x): symbol x used at step l.
    S(i,j,s): starting from state i, the automaton is in state s at step j
    (j = 1 is before any symbol; j = c+1 after the whole word).
    Y(i): state i is the sink.
    The numbering is a bijection onto 1..var_count.
    """

    n: int
    k: int
    c: int

    def x(self, l: int, sym: int) -> int:
        return (l - 1) * self.k + sym

    def s(self, i: int, j: int, state: int) -> int:
        return self.c * self.k + ((i - 1) * (self.c + 1) + (j - 1)) * self.n + state

    def y(self, i: int) -> int:
        return self.c * self.k + self.n * (self.c + 1) * self.n + i

    @property
    def var_count(self) -> int:
        return self.c * self.k + self.n * self.n * (self.c + 1) + self.n


@dataclass
class CnfInstance:
    var_count: int
    clauses: list[Clause]
    varmap: VarMap | None = field(default=None)

    def __post_init__(self):
        for cl in self.clauses:
            if not cl:
                raise ValueError("empty clause at construction")
            for lit in cl:
                if lit == 0 or abs(lit) > self.var_count:
                    raise ValueError(f"literal {lit} out of range for {self.var_count} vars")


def _exactly_one(variables: list[int], out: list[Clause]) -> None:
    # Pairwise mutual exclusion plus one at-least-one clause.
    for a in range(len(variables)):
        for b in range(a + 1, len(variables)):
            out.append([-variables[a], -variables[b]])
    out.append(list(variables))


def encode_sat(a: Automaton, c: int) -> CnfInstance:
    """Build the CNF that is satisfiable iff `a` has a synchronizing word of
    length c (equivalently, of length <= c, by padding monotonicity).

    The traced-state exactly-one constraints cover steps 1..c+1; leaving step
    c+1 unconstrained would let every sink check succeed vacuously.
    """
    if c < 1:
        raise ValueError(f"bound c must be >= 1, got {c}")
    n, k = a.n, a.k
    vm = VarMap(n, k, c)
    clauses: list[Clause] = []

    # One input symbol per step.
    for l in range(1, c + 1):
        _exactly_one([vm.x(l, x) for x in range(1, k + 1)], clauses)
    # One current state per start state and step, including the final step.
    for i in range(1, n + 1):
        for j in range(1, c + 2):
            _exactly_one([vm.s(i, j, s) for s in range(1, n + 1)], clauses)
    # Initial configuration.
    for i in range(1, n + 1):
        clauses.append([vm.s(i, 1, i)])
    # Transition propagation: in state j at step l, symbol x used => in
    # state delta(j,x) at step l+1.
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for l in range(1, c + 1):
                for x in range(1, k + 1):
                    clauses.append(
                        [-vm.s(i, l, j), -vm.x(l, x), vm.s(i, l + 1, a.delta[j - 1][x - 1])]
                    )
    # One sink state.
    _exactly_one([vm.y(i) for i in range(1, n + 1)], clauses)
    # Every start state reaches the sink after the last step.
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            clauses.append([-vm.y(i), vm.s(j, c + 1, i)])

    return CnfInstance(vm.var_count, clauses, vm)


def write_dimacs(cnf: CnfInstance) -> str:
    """Standard DIMACS CNF text; comment lines document the variable scheme
    when the instance carries a VarMap, so external models stay decodable."""
    lines: list[str] = []
    if cnf.varmap is not None:
        vm = cnf.varmap
        lines.append(f"c syncword instance n={vm.n} k={vm.k} c={vm.c}")
        lines.append("c vars: X(l,x)=(l-1)*k+x; S(i,j,s)=c*k+((i-1)*(c+1)+(j-1))*n+s;")
        lines.append("c       Y(i)=c*k+n*(c+1)*n+i")
    lines.append(f"p cnf {cnf.var_count} {len(cnf.clauses)}")
    for cl in cnf.clauses:
        lines.append(" ".join(str(lit) for lit in cl) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfInstance:
    """Parse DIMACS CNF (round-trips with write_dimacs, minus the VarMap)."""
    var_count = None
    clauses: list[Clause] = []
    current: Clause = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"bad problem line {line!r}", lineno)
            var_count = int(parts[2])
            continue
        if var_count is None:
            raise ParseError("clause before problem line", lineno)
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if var_count is None:
        raise ParseError("missing problem line")
    if current:
        raise ParseError("trailing clause not 0-terminated")
    return CnfInstance(var_count, clauses)


def parse_model_literals(text: str) -> dict[int, bool]:
    """Parse a signed-literal model listing (the usual solver v-line payload).

    Tolerates 'v' prefixes, line breaks, and a trailing 0.
    """
    assignment: dict[int, bool] = {}
    for tok in text.split():
        if tok in ("v", "V"):
            continue
        try:
            lit = int(tok)
        except ValueError:
            raise ParseError(f"bad literal token {tok!r}") from None
        if lit == 0:
            continue
        assignment[abs(lit)] = lit > 0
    return assignment


def decode_model(a: Automaton, c: int, assignment: dict[int, bool]) -> Word:
    """Read the synchronizing word off a satisfying assignment.

    Each step must have exactly one true symbol variable; anything else
    signals a solver/VarMap mismatch.
    """
    vm = VarMap(a.n, a.k, c)
    word: list[int] = []
    for l in range(1, c + 1):
        chosen = [x for x in range(1, a.k + 1) if assignment.get(vm.x(l, x), False)]
        if len(chosen) != 1:
            raise DecodeError(
                f"step {l}: expected exactly one true symbol variable, got {len(chosen)}"
            )
        word.append(chosen[0])
    return tuple(word)


DEFAULT_VAR_CAP = 500_000


def solve_internal(cnf: CnfInstance, var_cap: int = DEFAULT_VAR_CAP) -> dict[int, bool] | None:
    """Complete DPLL with unit propagation; a desk-scale verification oracle.

    Deterministic: branches on the lowest unassigned variable, true first.
    Returns a total satisfying assignment, or None for unsatisfiable.  Large
    instances belong to an external solver; the cap guards against misuse.
    """
    if cnf.var_count > var_cap:
        raise ResourceLimitError(
            f"{cnf.var_count} variables exceeds the internal solver cap {var_cap}; "
            "use an external solver"
        )
    nvars = cnf.var_count
    clauses = cnf.clauses
    # Watch lists: each clause watches two literals (one if unit).
    watches: list[list[int]] = [[] for _ in range(2 * nvars + 1)]

    def windex(lit: int) -> int:
        return lit + nvars

    watched: list[list[int]] = []
    assign: list[int] = [0] * (nvars + 1)  # 0 unknown, 1 true, -1 false
    initial_units: list[int] = []
    for ci, cl in enumerate(clauses):
        if len(cl) == 1:
            watched.append([cl[0], cl[0]])
            initial_units.append(cl[0])
        else:
            watched.append([cl[0], cl[1]])
        for lit in set(watched[ci]):
            watches[windex(lit)].append(ci)

    trail: list[int] = []

    def value(lit: int) -> int:
        v = assign[abs(lit)]
        return v if lit > 0 else -v

    def propagate(queue: list[int]) -> bool:
        # Assign every literal in the queue true, propagating units; returns
        # False on conflict.
        qi = 0
        while qi < len(queue):
            lit = queue[qi]
            qi += 1
            v = value(lit)
            if v == -1:
                return False
            if v == 1:
                continue
            assign[abs(lit)] = 1 if lit > 0 else -1
            trail.append(abs(lit))
            false_lit = -lit
            wl = watches[windex(false_lit)]
            i = 0
            while i < len(wl):
                ci = wl[i]
                w = watched[ci]
                other = w[1] if w[0] == false_lit else w[0]
                if value(other) == 1:
                    i += 1
                    continue
                # Look for a replacement watch.
                replaced = False
                for cand in clauses[ci]:
                    if cand == other or cand == false_lit:
                        continue
                    if value(cand) != -1:
                        if w[0] == false_lit:
                            w[0] = cand
                        else:
                            w[1] = cand
                        watches[windex(cand)].append(ci)
                        wl[i] = wl[-1]
                        wl.pop()
                        replaced = True
                        break
                if replaced:
                    continue
                if value(other) == -1:
                    return False
                queue.append(other)
                i += 1
        return True

    def backtrack(mark: int) -> None:
        while len(trail) > mark:
            assign[trail.pop()] = 0

    # Iterative DPLL with an explicit decision stack.
    if not propagate(list(initial_units)):
        return None
    stack: list[tuple[int, int, bool]] = []  # (var, trail mark, tried_false)
    next_var = 1
    while True:
        while next_var <= nvars and assign[next_var] != 0:
            next_var += 1
        if next_var > nvars:
            return {v: assign[v] == 1 for v in range(1, nvars + 1)}
        var = next_var
        mark = len(trail)
        if propagate([var]):
            stack.append((var, mark, False))
            continue
        backtrack(mark)
        # Try the false branch, unwinding decisions as needed.
        flip = var
        while True:
            if propagate([-flip]):
                stack.append((flip, mark, True))
                next_var = 1
                break
            backtrack(mark)
            # Both branches of `flip` failed; unwind to the last decision
            # whose false branch is untried.
            while stack:
                pvar, pmark, tried_false = stack.pop()
                backtrack(pmark)
                if not tried_false:
                    flip, mark = pvar, pmark
                    break
            else:
                return None
