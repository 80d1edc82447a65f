"""Constant-state leaf-parity algorithm for gadget-encoded binary pseudotrees.

For a fixed number of rounds every node exchanges the set of gadget roles it
could still play and drops the roles that cannot be matched against the set of
role sets its neighbours announce. A node left without roles aborts and the
abort floods the graph. Afterwards confirmed leaves start a wave: they output 0,
and every other node outputs one plus the smallest value it first hears, mod 2.
"""

from itertools import product
from typing import NamedTuple

from .core import Algorithm

VERIFY_ROUNDS = 9

LEAF, INTERNAL, ROOT = "L", "I", "R"
ROLES = (LEAF, INTERNAL, ROOT, "G1", "G2", "G3", "G4", "G5")

# one entry per incident edge: the roles the neighbour at that edge may have
NEIGHBOUR_SLOTS = {
    LEAF: ({"G1"},),
    INTERNAL: ({"G1"}, {"G3"}, {"G3"}),
    ROOT: ({"G3"}, {"G3"}),
    "G1": ({LEAF, INTERNAL}, {"G2"}, {"G4"}),
    "G2": ({"G1"}, {"G3"}, {"G5"}),
    "G3": ({"G2"}, {INTERNAL, ROOT}),
    "G4": ({"G1"}, {"G5"}),
    "G5": ({"G4"}, {"G2"}),
}

ROLES_BY_DEGREE = {
    d: frozenset(r for r, slots in NEIGHBOUR_SLOTS.items() if len(slots) == d) for d in (1, 2, 3)
}

ABORTED = "no"

MSG_ABORT = ("abort",)
MSG_IDLE = ("idle",)


class LPState(NamedTuple):
    phase: str  # "verify", "wave" or "halt"
    round: int = 0
    hyps: frozenset = frozenset()
    degree: int = 0
    output: object = None


STATE_ABORT = LPState("halt", output=ABORTED)
STATE_WAVE = LPState("wave")


def role_fits(role, received):
    """True iff the neighbour slots of ``role`` can be assigned to the received
    role sets so that every slot is compatible and every received set is used."""
    slots = NEIGHBOUR_SLOTS[role]
    sets = list(received)
    if len(sets) > len(slots):
        return False
    for choice in product(range(len(sets)), repeat=len(slots)):
        if len(set(choice)) == len(sets) and all(slot & sets[j] for slot, j in zip(slots, choice)):
            return True
    return False


class LeafParity(Algorithm):
    name = "leaf-parity"

    def __init__(self, verify_rounds=VERIFY_ROUNDS):
        self.verify_rounds = verify_rounds

    def init(self, degree, local_input):
        return LPState("verify", 0, ROLES_BY_DEGREE.get(degree, frozenset()), degree)

    def is_halting(self, state):
        return state.phase == "halt"

    def output(self, state):
        return state.output

    def message(self, state):
        if state.phase == "verify":
            return ("hyp", state.hyps)
        if state.phase == "wave":
            return MSG_IDLE
        if state.output == ABORTED:
            return MSG_ABORT
        return ("wave", state.output)

    def transition(self, state, received):
        if state.phase == "halt":
            return state
        if MSG_ABORT in received:
            return STATE_ABORT

        if state.phase == "verify":
            if not state.hyps:
                return STATE_ABORT
            if state.round == self.verify_rounds:
                return LPState("halt", output=0) if LEAF in state.hyps else STATE_WAVE
            sets = {m[1] for m in received}
            hyps = frozenset(r for r in state.hyps if role_fits(r, sets))
            if not hyps:
                return STATE_ABORT
            return state._replace(round=state.round + 1, hyps=hyps)

        values = [m[1] for m in received if m[0] == "wave"]
        if values:
            return LPState("halt", output=(min(values) + 1) % 2)
        return state
