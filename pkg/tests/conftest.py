import numpy as np
import pytest

from beehive.core import RngStream


class ScriptedRng(RngStream):
    """Deterministic stand-in: hands out preset draws in call order.

    `reals` feed uniform_real (the values are returned as-is, so script the
    final draw you want, e.g. phi itself); `ints` feed uniform_int; `raws`
    feed the bare random() used by the onlooker roulette.
    """

    def __init__(self, reals=(), ints=(), raws=()):
        super().__init__(0)
        self._reals = list(reals)
        self._ints = list(ints)
        raws_list = list(raws)
        if raws_list:
            self.random = lambda: raws_list.pop(0)

    def uniform_real(self, a, b):
        return self._reals.pop(0)

    def uniform_int(self, n):
        return self._ints.pop(0)


@pytest.fixture
def scripted():
    return ScriptedRng
