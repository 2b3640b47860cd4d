"""Shared builders, cached so the acceptance suite reuses heavy objects."""

import pytest

from quadswitch.gf2geom import ELLIPTIC, HYPERBOLIC, canonical_form
from quadswitch.srg import build_gamma
from quadswitch.switching import build_S, gm_switch, legal_t_range, make_config

_FORMS = {}
_GAMMAS = {}
_SWITCHED = {}


def form(n, kind):
    key = (n, kind)
    if key not in _FORMS:
        _FORMS[key] = canonical_form(n, kind)
    return _FORMS[key]


def gamma(n, kind):
    key = (n, kind)
    if key not in _GAMMAS:
        _GAMMAS[key] = build_gamma(form(n, kind))
    return _GAMMAS[key]


def switch_case(n, kind, t, variant):
    """(config, S, switched graph) for one legal switching request."""
    key = (n, kind, t, variant)
    if key not in _SWITCHED:
        cfg = make_config(form(n, kind), t, variant)
        s = build_S(cfg)
        _SWITCHED[key] = (cfg, s, gm_switch(gamma(n, kind), s))
    return _SWITCHED[key]


def legal_cases(ns=(5, 7)):
    for n in ns:
        for kind in (ELLIPTIC, HYPERBOLIC):
            for variant in ("t", "tt"):
                for t in legal_t_range(n, kind, variant):
                    yield n, kind, t, variant


@pytest.fixture(scope="session")
def builders():
    return form, gamma, switch_case
