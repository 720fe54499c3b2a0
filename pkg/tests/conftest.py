"""Every negative clique verdict produced anywhere in the suite is replayed
through an independent check before the calling test sees it."""

import pytest

from omegaramsey import ramsey
from helpers import NO_VERDICTS, recheck_verdict


@pytest.fixture(autouse=True)
def _recheck_negative_verdicts(monkeypatch):
    orig_h, orig_hom = ramsey.h_subset_L, ramsey.homogeneous

    def h_subset_L(t, p, *args, **kw):
        v = orig_h(t, p, *args, **kw)
        if not v.holds:
            ok = recheck_verdict(v, p)
            NO_VERDICTS.append(("h_subset_L", str(t), ok))
            assert ok, f"witness for {t} does not re-verify"
        return v

    def homogeneous(t, i, p, *args, **kw):
        v = orig_hom(t, i, p, *args, **kw)
        if not v.holds:
            ok = recheck_verdict(v, p, i)
            NO_VERDICTS.append(("homogeneous", f"{t}/E{i}", ok))
            assert ok, f"pair witness for {t}, class {i} does not re-verify"
        return v

    monkeypatch.setattr(ramsey, "h_subset_L", h_subset_L)
    monkeypatch.setattr(ramsey, "homogeneous", homogeneous)
    yield


def pytest_terminal_summary(terminalreporter):
    if NO_VERDICTS:
        good = sum(1 for _, _, ok in NO_VERDICTS if ok)
        terminalreporter.write_line(f"negative clique verdicts re-verified: {good}/{len(NO_VERDICTS)}")
