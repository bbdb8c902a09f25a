import json
from pathlib import Path
from typing import Any, Callable

from click.testing import CliRunner, Result
from pytest import fixture

from modules.cli import main


def write_structure(root: Path, structure: dict[str, Any]) -> None:
    for name, content in structure.items():
        path = root / name
        if isinstance(content, dict):
            path.mkdir(parents=True, exist_ok=True)
            write_structure(path, content)
        else:
            path.write_text(content)


def dig(record: dict[str, Any], dotted: str) -> Any:
    for key in dotted.split("."):
        record = record[key]
    return record


@fixture
def run_definition(tmp_path, monkeypatch) -> Callable[[dict[str, Any]], Result]:
    def inner(definition: dict[str, Any]) -> Result:
        write_structure(tmp_path, definition.get("structure", {}))
        monkeypatch.chdir(tmp_path)

        result = CliRunner().invoke(main, [str(a) for a in definition["args"]])

        assert result.exit_code == definition.get("exit_code", 0), (
            result.output,
            result.exception,
        )
        for expected in definition.get("stdout", []):
            assert expected in result.stdout
        for expected in definition.get("logs", []):
            assert expected in result.stderr
        for unexpected in definition.get("not_logs", []):
            assert unexpected not in result.stderr

        if (records := definition.get("records")) is not None:
            parsed = [json.loads(line) for line in result.stdout.splitlines()]
            assert len(parsed) == len(records)
            for record, expected in zip(parsed, records):
                for key, value in expected.items():
                    assert dig(record, key) == value, key

        return result

    return inner
