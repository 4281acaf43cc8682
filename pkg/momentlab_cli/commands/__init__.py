# One module per top-level command; main.py registers them on the Typer app.
