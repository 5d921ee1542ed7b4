"""Entry point for ``python -m kitebilliards``."""
from kitebilliards.cli import app

if __name__ == "__main__":
    app(prog_name="kitebilliards")
