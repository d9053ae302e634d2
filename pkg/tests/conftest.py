"""Shared test configuration and the acceptance-gate terminal summary."""

import re

from hypothesis import settings

# all properties assert exact identities; wall-clock deadlines only add
# flakiness on loaded machines
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")

_CRITERIA = {
    "01": "closed-form moments and event probabilities match exhaustive enumeration",
    "02": "symmetric-function identities and the power-sum route hold exactly",
    "03": "complete graphs and balanced stars have zero variance",
    "04": "skewed star tracks rho*zeta^2 and keeps a working deviation bound",
    "05": "imbalanced cycle's normalized variance decays in the stated window",
    "06": "normalized variance minus rho*zeta^2 vanishes at rate 1/n",
    "07": "sampled moments agree with closed forms at 4 SE in >= 95% of cells",
    "08": "ratio criterion: exact config value, MC agreement, flat star-like, decaying sparse family",
    "09": "edge-count relative variance decays in the stated window for both model families",
    "10": "fixed-seed CLI output is byte-identical across runs and thread counts",
}

_NODE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)[a-z]?_")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    verdicts: dict[str, bool] = {}
    for category in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(category, []):
            match = _NODE.search(getattr(report, "nodeid", ""))
            if match is None:
                continue
            num = match.group(1)
            verdicts[num] = verdicts.get(num, True) and category == "passed"
    if not verdicts:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num in sorted(verdicts):
        status = "PASS" if verdicts[num] else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status}  {_CRITERIA.get(num, '')}")
