"""Run the verification suites at small r and print one line per claim."""
from lcif import verify_suite

for name, rs in [("ekr", [2, 3, 4]), ("borg", [2, 3]), ("main", [3, 4]), ("thresholds", [2, 3, 4])]:
    report = verify_suite(name, rs)
    for note in report.notes:
        print(f"# {note}")
    for res in report.results:
        print(res.human())
    print(f"{name}: {'pass' if report.ok else 'FAIL'}\n")
