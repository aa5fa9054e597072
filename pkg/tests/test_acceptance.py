"""Acceptance criteria AC1-AC10 at full size, one PASS/FAIL line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the table; the lines
are also echoed into the terminal summary.
"""

import pytest

from tamewitt import acceptance as acc

CHECKS = [
    ("AC1 Witt group orders", 5, acc.check_witt_orders, ()),
    ("AC2 transfer closed form vs oracle", 60, acc.check_transfer_closed_form, ()),
    ("AC3 parity injectivity", 30, acc.check_parity_injective, ()),
    ("AC4 maximal anisotropic preservation", None, acc.check_max_anisotropic, ()),
    ("AC5 diman oracle", 120, acc.check_diman_oracle, (4,)),
    ("AC6 gamma lemma", None, acc.check_gamma_lemma, (100, 0)),
    ("AC7 Hensel lifting", None, acc.check_hensel, (1000, 32, 0)),
    ("AC8 endo-parameter counts", 30, acc.check_endo_counts, (20, 10, 12, 0)),
    ("AC9 dagger construction", None, acc.check_dagger, (50, 0)),
    ("AC10 scope", None, acc.check_scope_note, ()),
]

LINES = []


@pytest.mark.parametrize("name,limit,fn,args", CHECKS, ids=[c[0].split()[0] for c in CHECKS])
def test_acceptance(name, limit, fn, args):
    result = acc._timed(name, limit, fn, *args)
    line = result.line()
    LINES.append(line)
    print(line)
    assert result.passed, line
    assert result.within_limit, line

