"""Constant-state broadcast algorithm deciding the ThueMorse problem on paths.

Rounds 1 and 2 check the radius-1 orientation and word patterns. After that the
algorithm runs phases. In each phase every node fills a left and a right buffer
with the compressed word around it, matches the two length-17 patterns on the
combined view and rewrites its current symbol. All symbols of a phase are
computed from the configuration at the start of that phase; a ready/commit
handshake with a one-bit phase parity keeps that true even though nodes finish
filling at different rounds.
"""

from typing import NamedTuple

from .core import Algorithm
from .instances import pred, succ
from .words import END, SEPARATOR

P1 = "_0_1_1_0_1_0_0_1_"
P2 = "_1_0_0_1_0_1_1_0_"
ACCEPT_VIEWS = frozenset({"|_0_|", "|_0_1_1_0_|"})
LOCALLY_VALID = frozenset({"|_0", "0_|", "0_0", "1_1", "0_1", "1_0", "_0_", "_1_"})

SEPARATORS_PER_BUFFER = 8
# a well-formed compressed buffer with 8 separators holds at most 16 symbols
BUFFER_CAP = 17

ACCEPT = "accept"
ABORT = "abort"

YES = "yes"
NO = "no"

CTRL_NONE = ""
CTRL_READY = "ready"
CTRL_ABORT = "abort"
CTRL_ACCEPT = "accept"


class TMState(NamedTuple):
    phase: str  # "I", "II", "III", "yes" or "no"
    degree: int
    orient: str
    c: str
    left: str = ""
    right: str = ""
    parity: int = 0
    ready: bool = False
    pending: str = ""


class TMMessage(NamedTuple):
    orient: str
    parity: int
    control: str
    fill_right: str  # r(L, c), read by the right neighbour into its left buffer
    fill_left: str  # l(R, c), read by the left neighbour into its right buffer
    c: str


STATE_YES = TMState(YES, 0, "", "")
STATE_NO = TMState(NO, 0, "", "")
MESSAGE_ACCEPT = TMMessage("", 0, CTRL_ACCEPT, "", "", "")
MESSAGE_ABORT = TMMessage("", 0, CTRL_ABORT, "", "", "")


def fn_r(x, y):
    """Append ``y`` on the right unless ``x`` already ends with it."""
    return x if x.endswith(y) else x + y


def fn_l(x, y):
    """Prepend ``y`` on the left unless ``x`` already starts with it."""
    return x if x.startswith(y) else y + x


def combine_view(left, c, right):
    """Join ``left + c + right`` without repeating ``c``; returns (view, 1-based position of c)."""
    if left.endswith(c):
        head, p = left[:-1], len(left) - 1
    else:
        head, p = left, len(left)
    tail = right[1:] if right.startswith(c) else right
    return head + c + tail, p + 1


def _value(pattern_index, reverse):
    if pattern_index in (1, 9, 17):
        return SEPARATOR
    low = pattern_index <= 8
    return ("1" if low else "0") if reverse else ("0" if low else "1")


def match_substitute(view, q):
    """New current symbol for the node at position ``q`` of ``view``, or ACCEPT / ABORT."""
    if view in ACCEPT_VIEWS:
        return ACCEPT
    values = set()
    for pattern, reverse in ((P1, False), (P2, True)):
        start = max(0, q - len(pattern))
        stop = min(q, len(view) - len(pattern) + 1)
        for s in range(start, stop):
            if view.startswith(pattern, s):
                values.add(_value(q - s, reverse))
    if len(values) != 1:
        return ABORT
    return values.pop()


def trim_left_buffer(buf):
    """Keep the part of a left buffer up to (and including) the 8th separator from its near end."""
    seen = 0
    for j in range(len(buf) - 1, -1, -1):
        if buf[j] == SEPARATOR:
            seen += 1
            if seen == SEPARATORS_PER_BUFFER:
                return buf[j:]
    return buf


def trim_right_buffer(buf):
    seen = 0
    for j, x in enumerate(buf):
        if x == SEPARATOR:
            seen += 1
            if seen == SEPARATORS_PER_BUFFER:
                return buf[: j + 1]
    return buf


def is_frozen(buf):
    return END in buf or buf.count(SEPARATOR) >= SEPARATORS_PER_BUFFER


def view_of(state):
    """Compressed view and position of a Part III state."""
    return combine_view(state.left, state.c, state.right)


class ThueMorse(Algorithm):
    name = "thue-morse"

    def init(self, degree, local_input):
        orient, symbol = local_input
        return TMState("I", degree, orient, symbol)

    def is_halting(self, state):
        return state.phase in (YES, NO)

    def output(self, state):
        return state.phase

    def message(self, state):
        if state.phase == YES:
            return MESSAGE_ACCEPT
        if state.phase == NO:
            return MESSAGE_ABORT
        if state.phase != "III":
            return TMMessage(state.orient, 0, CTRL_NONE, "", "", state.c)
        control = CTRL_READY if state.ready else CTRL_NONE
        return TMMessage(
            state.orient,
            state.parity,
            control,
            fn_r(state.left, state.c),
            fn_l(state.right, state.c),
            state.c,
        )

    def transition(self, state, received):
        if state.phase in (YES, NO):
            return state
        controls = {m.control for m in received}
        if CTRL_ABORT in controls:
            return STATE_NO
        if CTRL_ACCEPT in controls:
            return STATE_YES

        if state.phase == "I":
            if state.degree not in (1, 2):
                return STATE_NO
            seen = {state.orient} | {m.orient for m in received}
            if state.degree == 1:
                seen.add(END)
            return state._replace(phase="II") if len(seen) == 3 else STATE_NO

        sides = _sides(state, received)
        if sides is None:
            return STATE_NO
        left, right = sides

        if state.phase == "II":
            x = left.c if left is not None else END
            z = right.c if right is not None else END
            return state._replace(phase="III") if x + state.c + z in LOCALLY_VALID else STATE_NO

        if state.ready:
            # commit once every neighbour is ready in this phase or already moved on
            if all(m is None or m.parity != state.parity or m.control == CTRL_READY for m in sides):
                return state._replace(
                    c=state.pending, left="", right="", parity=1 - state.parity, ready=False, pending=""
                )
            return state

        buf_l, buf_r = state.left, state.right
        if not is_frozen(buf_l):
            if left is None:
                buf_l = END
            elif left.parity == state.parity:
                buf_l = trim_left_buffer(left.fill_right)
        if not is_frozen(buf_r):
            if right is None:
                buf_r = END
            elif right.parity == state.parity:
                buf_r = trim_right_buffer(right.fill_left)
        if len(buf_l) > BUFFER_CAP or len(buf_r) > BUFFER_CAP:
            # only reachable from a configuration with adjacent distinct letters
            return STATE_NO
        if is_frozen(buf_l) and is_frozen(buf_r):
            result = match_substitute(*combine_view(buf_l, state.c, buf_r))
            if result == ACCEPT:
                return STATE_YES
            if result == ABORT:
                return STATE_NO
            return state._replace(left=buf_l, right=buf_r, ready=True, pending=result)
        return state._replace(left=buf_l, right=buf_r)


def _sides(state, received):
    """(left message, right message) with ``None`` for the virtual end neighbour."""
    by_orient = {m.orient: m for m in received}
    if len(by_orient) != len(received):
        return None
    left = by_orient.pop(pred(state.orient), None)
    right = by_orient.pop(succ(state.orient), None)
    if by_orient:
        return None
    if state.degree == 2 and (left is None or right is None):
        return None
    if state.degree == 1 and (left is None) == (right is None):
        return None
    return left, right


class PhaseRecorder:
    """Observer for :func:`sbsim.core.run_execution` that reconstructs the
    configuration after every phase of a ThueMorse run."""

    def __init__(self, n):
        self.n = n
        self.initial = [None] * n
        self.commits = [[] for _ in range(n)]
        self.views = []  # (node, phase, view, q) at the moment the node becomes ready
        self.halts = []  # (round, node, phase, output)

    def __call__(self, rnd, v, old, new):
        if old.phase == "II" and new.phase == "III":
            self.initial[v] = new.c
        elif new.phase in (YES, NO):
            phase = len(self.commits[v]) + 1 if old.phase == "III" else 0
            self.halts.append((rnd, v, phase, new.phase))
        elif old.phase == "III" and old.ready and not new.ready:
            self.commits[v].append(new.c)
        elif old.phase == "III" and new.ready and not old.ready:
            view, q = view_of(new)
            self.views.append((v, len(self.commits[v]) + 1, view, q))

    def configurations(self):
        """Configurations at the start of part III and after each completed phase."""
        if any(c is None for c in self.initial):
            return []
        configs = ["".join(self.initial)]
        k = 0
        while all(len(c) > k for c in self.commits):
            configs.append("".join(c[k] for c in self.commits))
            k += 1
        return configs

    def phase_outcomes(self):
        """One entry per phase that started: the configuration it produced, or ACCEPT / ABORT."""
        configs = self.configurations()
        if not configs:
            return []
        outcomes = list(configs[1:])
        if self.halts:
            first = min(self.halts)
            outcomes.append(ACCEPT if first[3] == YES else ABORT)
        return outcomes
