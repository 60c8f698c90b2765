from __future__ import annotations

import report_lines


def pytest_terminal_summary(terminalreporter) -> None:
    if report_lines.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(report_lines.LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
