import csv
import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

import numpy as np


logger = logging.getLogger(__name__)

REPORT_FILE = 'report.json'
TIMING_FILE = 'timing.json'


def _plain(value: Any) -> Any:
    """
    Convert numpy scalars, tuples and nested containers into JSON-friendly builtins.
    """
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}

    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]

    if isinstance(value, np.generic):
        return value.item()

    return value


def _cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))

    if value is None:
        return ''

    return str(value)


@dataclass
class Table:
    name: str
    columns: Sequence[str]
    rows: List[tuple] = field(default_factory=list)

    def add(self, *row):
        if len(row) != len(self.columns):
            raise ValueError(f'Table {self.name!r} has {len(self.columns)} columns, got a row of {len(row)}')

        self.rows.append(tuple(row))


@dataclass
class ExperimentReport:
    """
    The outcome of one experiment: the config it ran with, its metrics, tables and verdicts. Timing is kept apart
    from the report file so that reruns produce identical files.
    """
    experiment: str
    config: Dict[str, Any]
    metrics: Dict[str, Any] = field(default_factory=dict)
    verdicts: Dict[str, bool] = field(default_factory=dict)
    tables: List[Table] = field(default_factory=list)
    timing: float = 0.

    def table(self, name: str, *columns: str) -> Table:
        table = Table(name, columns)
        self.tables.append(table)
        return table

    def check(self, name: str, value: float, bound: float) -> bool:
        """
        Record `value` as a metric and the verdict `|value| <= bound`.
        """
        value = float(value)
        self.metrics[name] = value
        self.verdicts[name] = bool(abs(value) <= bound)
        return self.verdicts[name]

    @property
    def failed(self) -> List[str]:
        return [name for name, verdict in self.verdicts.items() if not verdict]

    @property
    def passed(self) -> bool:
        return not self.failed

    def serialize(self) -> dict:
        return {
            'experiment': self.experiment,
            'config': _plain(self.config),
            'metrics': _plain(self.metrics),
            'verdicts': dict(self.verdicts),
            'passed': self.passed,
            'tables': {table.name: f'{table.name}.csv' for table in self.tables},
        }


def write_table(table: Table, directory: str) -> str:
    path = os.path.join(directory, f'{table.name}.csv')
    with open(path, 'w', newline='') as table_file:
        writer = csv.writer(table_file, lineterminator='\n')
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([_cell(value) for value in row])

    return path


def write_report(report: ExperimentReport, out: str) -> str:
    """
    Write `<out>/<experiment>/report.json` and one CSV per table.

    :param report: The report
    :param out: The output root
    :return: The experiment directory
    """
    directory = os.path.join(out, report.experiment)
    os.makedirs(directory, exist_ok=True)

    with open(os.path.join(directory, REPORT_FILE), 'w') as report_file:
        json.dump(report.serialize(), report_file, indent=2)
        report_file.write('\n')

    for table in report.tables:
        write_table(table, directory)

    with open(os.path.join(directory, TIMING_FILE), 'w') as timing_file:
        json.dump({'seconds': report.timing}, timing_file)

    logger.debug('Wrote %d tables to %s', len(report.tables), directory)
    return directory
