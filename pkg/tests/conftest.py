from functools import lru_cache

from hypothesis import HealthCheck, settings

from homcalc.fodc import quotient_fodc, universal_fodc
from homcalc.homstruct import builtin

settings.register_profile(
    "homcalc", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("homcalc")


@lru_cache(maxsize=None)
def zn(n, k=1):
    return builtin("group_algebra_Zn", n=n, k=k)


@lru_cache(maxsize=None)
def h4(lam=-1):
    return builtin("sweedler_h4", **{"lambda": str(lam)})


@lru_cache(maxsize=None)
def universal(key):
    return universal_fodc(algebra(key))


@lru_cache(maxsize=None)
def quotient(key, ideal):
    return quotient_fodc(algebra(key), [list(v) for v in ideal])


def algebra(key):
    kind, *args = key
    return zn(*args) if kind == "zn" else h4(*args)


# the fixtures every cross-module test sweeps over
KEYS = [("zn", 2), ("zn", 3, 2), ("zn", 4, 3), ("h4", -1), ("h4", 1), ("h4", 2)]
