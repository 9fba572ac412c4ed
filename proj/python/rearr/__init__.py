"""Dyadic rearrangement operators, Haar numerics and the colouring game.

Every analysis function takes keyword arguments matching the JSON request
fields of the CLI and HTTP service and returns the report as a dict.
"""

import json

from . import _core
from ._core import DomainError, InputError, MoveRejected, haar_analyze, haar_synthesize, lp_norm

__all__ = [
    "DomainError",
    "InputError",
    "MoveRejected",
    "Game",
    "haar_analyze",
    "haar_synthesize",
    "lp_norm",
]


def _endpoint(name):
    fn = getattr(_core, name)

    def call(**request):
        return json.loads(fn(json.dumps(request)))

    call.__name__ = name
    call.__doc__ = f"Run the {name.replace('_', ' ')} request and return its report."
    return call


for _name in (
    "shift_report",
    "shift_nj",
    "shift_semenov",
    "shift_decompose",
    "shift_select_levels",
    "tree_report",
    "norm_report",
    "figiel_trend",
    "blocked_report",
    "restricted_report",
    "game_check",
    "game_previsible",
    "game_extend",
    "game_oracle",
    "game_adversary",
):
    globals()[_name] = _endpoint(_name)
    __all__.append(_name)


class Game:
    """A game in which the engine answers for Player B.

    ``initial`` is a coloured collection {"j", "d", "eta", "members"}.
    """

    def __init__(self, initial, cap=1 << 20):
        self._game = _core.Game(json.dumps(initial), cap)

    def play(self, added):
        """Adds intervals [{"j", "k"}, ...] for Player A; returns the round record."""
        return json.loads(self._game.play(json.dumps(added)))

    @property
    def state(self):
        return json.loads(self._game.state())

    @property
    def status(self):
        return self._game.status
