import sys
import traceback

from app.application import RlIndexApplication


def main() -> int:
    try:
        return RlIndexApplication(sys.argv[1:]).run()
    except Exception:
        print(traceback.format_exc(), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
