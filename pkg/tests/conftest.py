import pathlib
import sys

SRC = pathlib.Path(__file__).resolve().parents[1] / "src"
if str(SRC) not in sys.path:
    try:
        import fowler4  # noqa: F401
    except ImportError:
        sys.path.insert(0, str(SRC))
