"""Collects the one-line verdicts printed at the end of the acceptance run."""

LINES: list[str] = []


def record(criterion, ok, detail=""):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else "")
    LINES.append(line)
    print(line)
    return ok
