"""CSV rendering of run results.

Documents are rendered in memory and written in one call, so a failed run
never leaves a partial file behind.
"""

from pathlib import Path
from typing import Optional, Union

import click
import pandas as pd

from .config import Config

FLOAT_FORMAT = '%.17g'


def render_csv(subcommand: str, frame: pd.DataFrame) -> str:
    """Header comment line followed by the frame, 17 significant digits."""
    header = f"# groupoid-flow {Config.CSV_SCHEMA_VERSION} {subcommand}\n"
    body = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    return header + body


def write_report(text: str, output: Optional[Union[str, Path]] = None):
    """Write to ``output`` or, without a path, to standard output."""
    if output is None:
        click.echo(text, nl=False)
        return
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', newline='') as f:
        f.write(text)
