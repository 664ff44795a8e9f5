"""Compiler-style diagnostics for chain files and checks.

    chains/bad.chain:4:12: error: Shape Mismatch [g_fwd[0]: expected 2x2, got 2x3]
    >   "g_fwd": [ [["1", "0", "0"], ...
                   ^
      Tip: Every g map is m x m and every f map is r x r.
"""
import sys
from datetime import datetime, timezone

from .chain import IRRATIONAL_WARNING


class Colors:
    GREEN = '\033[92m'
    RED = '\033[91m'
    YELLOW = '\033[93m'
    BLUE = '\033[94m'
    BOLD = '\033[1m'
    END = '\033[0m'


def colorize(text, color, stream=None):
    """Apply color to text if the stream is a terminal."""
    stream = stream or sys.stdout
    if hasattr(stream, 'isatty') and stream.isatty():
        return f"{color}{text}{Colors.END}"
    return text


ERROR_DB = {
    "E000": ("Internal Error", "This is a bug in linkhom; please report the input that triggered it."),
    "E101": ("Zero GCD", "gcd(0, 0) is undefined."),
    "E102": ("Zero Denominator", "Rational numbers and rational functions need a nonzero denominator."),
    "E103": ("Pole at Point", "The value is not regular at the requested point."),
    "E201": ("Singular Matrix", "The matrix has no inverse over the field."),
    "E202": ("Dimension Error", "Matrix shapes do not fit the operation."),
    "E301": ("Parse Error", "Chain files are JSON-like: strings for rationals, integers for r/m/n, // comments."),
    "E302": ("Shape Mismatch", "Every g map is m x m, every f map is r x r, and each family holds n-1 maps."),
    "E303": ("Index Out of Range", "Chain indices run from 1 to n."),
    "E304": ("Not a Special Point", "Conditions II and III only constrain points where s vanishes."),
    "E401": ("Complementarity Failure", "Condition III fails: the transported blocks do not span G_i."),
    "E402": ("Full Rank Failure", "A block map of the decomposition is not invertible at the point."),
    "E501": ("Infeasible Target", "The requested broken chain cannot exist for these parameters."),
}

WARNING_DB = {
    "W001": ("Irrational Locus", "s has zeros that are not rational; those fibers are not checked."),
    "W002": ("Point Skipped", "s does not vanish there, so conditions II/III impose nothing."),
    "W003": ("Cross-Check Mismatch", "The structural and brute-force fiber bases disagree."),
}


class Reporter:
    """Collects and prints diagnostics about one input (a file or the demo)."""

    def __init__(self, filename="<input>", source=None, stream=None, verbose=False, timestamps=False):
        self.filename = filename
        self.source_lines = source.split('\n') if source else []
        self.stream = stream or sys.stderr
        self.verbose = verbose
        self.timestamps = timestamps
        self.errors = []
        self.warnings = []

    def _format_source_line(self, line, col):
        """Format a source line with error pointer."""
        if line < 1 or line > len(self.source_lines):
            return ""
        pointer = ' ' * col + '^'
        return f">   {self.source_lines[line - 1]}\n    {pointer}"

    def _format(self, kind, color, title, tip, msg, loc):
        m = title + (f" [{msg}]" if msg else "")
        head = f"{self.filename}:{loc[0]}:{loc[1]}" if loc else self.filename
        parts = [f"{head}: {colorize(kind, color, self.stream)}: {m}"]
        context = self._format_source_line(*loc) if loc else ""
        if context:
            parts.append(context)
        parts.append(f"  {colorize('Tip:', Colors.YELLOW if kind == 'error' else Colors.BLUE, self.stream)} {tip}")
        return "\n".join(parts)

    def add_error(self, code, msg=None, loc=None):
        title, tip = ERROR_DB.get(code, ("Error", "-"))
        text = self._format('error', Colors.RED, title, tip, msg, loc)
        self.errors.append(text)
        print(text, file=self.stream)

    def add_warning(self, code, msg=None, loc=None):
        title, tip = WARNING_DB.get(code, ("WARNING", "-"))
        text = self._format('warning', Colors.YELLOW, title, tip, msg, loc)
        self.warnings.append(text)
        print(text, file=self.stream)

    def report_exception(self, exc):
        """Print a LinkHomError (or an OSError) as an error diagnostic."""
        code = getattr(exc, 'code', None)
        if code is None:
            self.add_error("E301", f"{exc.__class__.__name__}: {exc}")
            return
        msg = getattr(exc, 'msg', None) or str(exc)
        self.add_error(code, msg, getattr(exc, 'loc', None))

    def note(self, msg):
        if not self.verbose:
            return
        if self.timestamps:
            msg = f"[{now_iso()}] {msg}"
        print(colorize(msg, Colors.BLUE, self.stream), file=self.stream)


def now_iso():
    return datetime.now(timezone.utc).isoformat(timespec='seconds')


def warning_code(text):
    # W001 for the irrational-locus note, W002 for skipped points
    return "W001" if text == IRRATIONAL_WARNING else "W002"
