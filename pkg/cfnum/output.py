"""Payloads JSON e CSV compartilhados pelos comandos e pelas views."""
import csv
import io
import json

from .series import format_rational


def rows_payload(rows) -> list:
    return [[format_rational(value) for value in row] for row in rows]


def triangle_payload(triangle) -> dict:
    return {
        "family": triangle.family.id.value,
        "params": triangle.family.params_payload(),
        "n_max": triangle.n_max,
        "rows": rows_payload(triangle.rows),
    }


def assoc_payload(triangle) -> dict:
    spec = triangle.spec
    return {
        "family": f"{triangle.kind.value}:{spec.name}",
        "sequence": spec.name,
        "kind": triangle.kind.value,
        "route": triangle.route,
        "params": spec.params_payload(),
        "n_max": triangle.n_max,
        "rows": rows_payload(triangle.rows),
    }


def to_csv(rows) -> str:
    """Cabeçalho n,k,value; valores entre aspas ("p/q")."""
    buffer = io.StringIO()
    buffer.write("n,k,value\n")
    # QUOTE_NONNUMERIC: os índices saem crus e os valores (str) entre aspas.
    writer = csv.writer(buffer, lineterminator="\n", quoting=csv.QUOTE_NONNUMERIC)
    for n, row in enumerate(rows):
        for k, value in enumerate(row):
            writer.writerow([n, k, format_rational(value)])
    return buffer.getvalue()


def to_json(payload) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2)


def series_values(series, egf: bool = False) -> list:
    values = series.egf_coefficients() if egf else series.coeffs
    return [format_rational(value) for value in values]


def series_payload(name: str, params: dict, f, f_bar, central_log, central_exp, egf=False) -> dict:
    return {
        "delta": name,
        "params": {key: format_rational(value) for key, value in params.items()},
        "order": f.order,
        "view": "egf" if egf else "ogf",
        "f": series_values(f, egf),
        "f_bar": series_values(f_bar, egf),
        "central_log": series_values(central_log, egf),
        "central_exp": series_values(central_exp, egf),
    }
