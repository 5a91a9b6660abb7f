from dotenv import load_dotenv

from ontomatch.controller.cli import main

try:
    load_dotenv()
except OSError:
    pass


if __name__ == "__main__":
    main()
