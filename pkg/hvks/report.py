from builtins import object
import datetime
import json
import numpy as np

__all__ = ["verificationReport"]


def _plain(value):

    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, tuple):
        return list(value)
    return value


class verificationReport(object):
    """
    A list of named checks with run metadata.

    The JSON form has the fields "checks" (each with "name", "expected",
    "observed", "tolerance", "pass"), "seed", "version", "timestamp" and
    the overall "pass", plus any extra fields merged in by the command.

    Parameters
    ----------
    title: str
    Heading of the text rendering.

    seed: int, optional
    Random seed of the run, None if nothing random was drawn.
    """

    def __init__(self, title, seed=None):

        from . import __version__

        self.title = title
        self.seed = seed
        self.version = __version__
        self.timestamp = datetime.datetime.now(
            datetime.timezone.utc).isoformat()
        self.checks = []
        self.extra = {}
        self.notes = []

        return

    def add_check(self, name, expected, observed, tolerance, passed):

        self.checks.append({"name": name, "expected": _plain(expected),
                            "observed": _plain(observed),
                            "tolerance": _plain(tolerance),
                            "pass": bool(passed)})

        return

    def add_records(self, records):
        """Append check dicts that already follow the check schema."""
        for rec in records:
            self.add_check(rec["name"], rec["expected"], rec["observed"],
                           rec["tolerance"], rec["pass"])

        return

    def add_note(self, text):
        """Free text shown in the rendering but not in the JSON."""
        self.notes.append(text)

        return

    @property
    def passed(self):
        return all(c["pass"] for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c["pass"]]

    def to_dict(self):

        doc = dict(self.extra)
        doc.update({"checks": list(self.checks), "seed": self.seed,
                    "version": self.version, "timestamp": self.timestamp,
                    "pass": self.passed})
        return doc

    def to_json(self, indent=1):
        return json.dumps(self.to_dict(), indent=indent)

    def render(self, max_lines=None):

        lines = [self.title, '=' * len(self.title)]
        shown = self.checks if max_lines is None else \
            self.failures()[:max_lines] + \
            [c for c in self.checks if c["pass"]][:max(0, max_lines -
                                                       len(self.failures()))]
        for c in shown:
            lines.append("[%s] %s: expected %s, observed %s (tol %s)" %
                         ('PASS' if c["pass"] else 'FAIL', c["name"],
                          c["expected"], c["observed"], c["tolerance"]))
        if len(shown) < len(self.checks):
            lines.append("... %i more checks" %
                         (len(self.checks) - len(shown)))
        lines.extend(self.notes)
        lines.append("%i of %i checks pass" %
                     (len(self.checks) - len(self.failures()),
                      len(self.checks)))
        return '\n'.join(lines)
