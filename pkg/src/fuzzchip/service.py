"""HTTP/JSON workbench API.

A single-user, single-dictionary service: definitions live in one
dictionary file, chips are created from rule text against that
dictionary, and every definition write synchronously re-resolves all
chips before the request returns, so no stale snapshot is observable.
The service adds no arithmetic; every number it returns comes straight
from the library calls.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import HTMLResponse, JSONResponse, PlainTextResponse, Response
from pydantic import BaseModel

from fuzzchip.codegen import (
    CapacityError,
    TargetError,
    emit_table,
    gen_table,
    write_rule_image,
)
from fuzzchip.core import (
    FuzzyDictionary,
    MembershipFunction,
    NAME_RE,
    load_dictionary,
    upsert_definition,
)
from fuzzchip.engine import ChipObject, ChipType, assert_input, create_chip, update_chip
from fuzzchip.network import ChipNetwork, Connection, NetworkError
from fuzzchip.rules import RuleError, RuleSet, normalize, parse, resolve

_CHIP_TYPES = {
    "minmax": ChipType.MINMAX,
    "mult": ChipType.MULTIPLICATIVE,
    "multiplicative": ChipType.MULTIPLICATIVE,
}

_JSON_ROW_LIMIT = 1 << 16  # larger tables stream as text


class WorkbenchSession:
    """Dictionary + chips + network, with serialized mutation."""

    def __init__(self, dictionary_path: str | Path, rules_dir: str | Path | None = None):
        self.dictionary_path = Path(dictionary_path)
        if self.dictionary_path.exists():
            self.dictionary = load_dictionary(self.dictionary_path)
        else:
            self.dictionary = FuzzyDictionary()
        self.network = ChipNetwork()
        self._rule_sets: dict[str, RuleSet] = {}
        self._lock = threading.RLock()
        if rules_dir is not None:
            for path in sorted(Path(rules_dir).glob("*.fzr")):
                self.create_chip_from_text(
                    path.stem.upper(), "minmax", path.read_text(encoding="utf-8")
                )

    def list_definitions(self) -> list[tuple[str, MembershipFunction]]:
        return self.dictionary.items()

    def get_definition(self, name: str) -> MembershipFunction:
        return self.dictionary.get(name)

    def put_definition(self, name: str, levels) -> MembershipFunction:
        """Persist one definition and re-resolve every chip against it."""
        if not NAME_RE.match(name):
            raise ValueError(f"invalid definition name {name!r}")
        mf = MembershipFunction(tuple(int(v) for v in levels))
        with self._lock:
            # persist first; a failed write must not leave memory ahead of disk
            upsert_definition(self.dictionary_path, name, mf)
            self.dictionary.define(name, mf)
            for chip_name, rule_set in self._rule_sets.items():
                compiled = resolve(rule_set, self.dictionary)
                chip = self.network.get_chip(chip_name)
                self.network.replace_chip(update_chip(chip, compiled))
        return mf

    def create_chip_from_text(self, name: str, type_name: str, rule_text: str):
        """Returns (chip, rule count before normalization, after)."""
        chip_type = _CHIP_TYPES.get(type_name.lower())
        if chip_type is None:
            raise ValueError(f"unknown chip type {type_name!r}")
        with self._lock:
            if name.upper() in self.network:
                raise NetworkError(f"duplicate chip name {name!r}")
            rule_set = parse(rule_text, source=name)
            normalized = normalize(rule_set)
            compiled = resolve(normalized, self.dictionary)
            chip = create_chip(name.upper(), chip_type, compiled)
            self.network.add_chip(chip)
            self._rule_sets[chip.name] = normalized
        return chip, len(rule_set.rules), len(normalized.rules)

    def list_chips(self) -> list[ChipObject]:
        return list(self.network.chips.values())

    def get_chip(self, name: str) -> ChipObject:
        return self.network.get_chip(name)

    def connect(self, connection: Connection) -> list[str]:
        with self._lock:
            return self.network.connect(connection)

    def propagate(self, external: dict) -> dict:
        return self.network.propagate(external)


class DefinitionBody(BaseModel):
    levels: list[int]


class ChipCreateBody(BaseModel):
    name: str
    type: str = "minmax"
    ruleText: str


class InferBody(BaseModel):
    inputs: list[float]


class CompileBody(BaseModel):
    target: str
    bytesize: int = 0
    format: str | None = None


class ConnectionBody(BaseModel):
    src: str
    srcOutput: int
    dst: str
    dstInput: int


class ExternalInput(BaseModel):
    chip: str
    input: int
    value: float


class PropagateBody(BaseModel):
    external: list[ExternalInput]


def _signal_json(decl):
    return {"name": decl.name, "lo": decl.universe.lo, "hi": decl.universe.hi}


def _chip_json(chip: ChipObject) -> dict:
    return {
        "name": chip.name,
        "type": chip.chip_type.value,
        "inputs": [_signal_json(d) for d in chip.compiled.inputs],
        "outputs": [_signal_json(d) for d in chip.compiled.outputs],
        "ruleCount": chip.n_rules,
    }


def _error(status: int, message: str, diagnostics=None) -> JSONResponse:
    body = {"error": message, "diagnostics": diagnostics or []}
    return JSONResponse(status_code=status, content=body)


def _rule_error_response(exc: RuleError) -> JSONResponse:
    diagnostics = [
        {
            "severity": "error",
            "line": exc.line,
            "column": exc.col,
            "message": str(exc),
        }
    ]
    return _error(400, str(exc), diagnostics)


def create_app(session: WorkbenchSession, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="fuzzchip workbench", version="0.1.0")

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        return _error(400, "malformed request body")

    @app.get("/api/definitions")
    def list_definitions():
        return [
            {"name": name, "levels": list(mf.levels)}
            for name, mf in session.list_definitions()
        ]

    @app.get("/api/definitions/{name}")
    def get_definition(name: str):
        try:
            mf = session.get_definition(name)
        except KeyError:
            return _error(404, f"no definition named {name}")
        return {"name": name.upper(), "levels": list(mf.levels)}

    @app.put("/api/definitions/{name}")
    def put_definition(name: str, body: DefinitionBody):
        try:
            mf = session.put_definition(name, body.levels)
        except ValueError as exc:
            return _error(400, str(exc))
        return {"name": name.upper(), "levels": list(mf.levels)}

    @app.get("/api/chips")
    def list_chips():
        return [_chip_json(chip) for chip in session.list_chips()]

    @app.post("/api/chips", status_code=201)
    def create_chip_route(body: ChipCreateBody):
        try:
            chip, rule_count, normalized_count = session.create_chip_from_text(
                body.name, body.type, body.ruleText
            )
        except NetworkError as exc:
            return _error(409, str(exc))
        except RuleError as exc:
            return _rule_error_response(exc)
        except ValueError as exc:
            return _error(400, str(exc))
        return {
            "name": chip.name,
            "inputs": [_signal_json(d) for d in chip.compiled.inputs],
            "outputs": [_signal_json(d) for d in chip.compiled.outputs],
            "ruleCount": rule_count,
            "normalizedRuleCount": normalized_count,
            "diagnostics": [],
        }

    @app.post("/api/chips/{name}/infer")
    def infer(name: str, body: InferBody):
        try:
            chip = session.get_chip(name)
        except NetworkError as exc:
            return _error(404, str(exc))
        try:
            result = assert_input(chip, body.inputs)
        except ValueError as exc:
            return _error(400, str(exc))
        return {
            "outputs": list(result.outputs),
            "memberships": [list(v) for v in result.memberships],
            "alphas": list(result.activations),
        }

    @app.post("/api/chips/{name}/compile")
    def compile_chip(name: str, body: CompileBody):
        try:
            chip = session.get_chip(name)
        except NetworkError as exc:
            return _error(404, str(exc))
        if body.target == "inference-chip":
            try:
                image = write_rule_image(chip)
            except (CapacityError, TargetError) as exc:
                return _error(409, str(exc))
            return Response(
                content=image,
                media_type="application/octet-stream",
                headers={
                    "Content-Disposition": f'attachment; filename="{chip.name.lower()}.fzc"'
                },
            )
        if body.target != "memory-chip":
            return _error(400, f"unknown target {body.target!r}")
        try:
            table = gen_table(chip, body.bytesize)
        except (CapacityError, TargetError) as exc:
            return _error(409, str(exc))
        if body.format == "text" or table.addresses > _JSON_ROW_LIMIT:
            return PlainTextResponse(emit_table(table))
        return {
            "inputCount": table.input_count,
            "outputCount": table.output_count,
            "bytesize": table.bytesize,
            "rows": [
                [address, *levels, *outputs]
                for address, levels, outputs in table.rows()
            ],
            "noActivationAddresses": list(table.no_activation),
        }

    @app.post("/api/network/connections", status_code=201)
    def add_connection(body: ConnectionBody):
        try:
            warnings = session.connect(
                Connection(body.src, body.srcOutput, body.dst, body.dstInput)
            )
        except NetworkError as exc:
            return _error(409, str(exc))
        return {"warnings": warnings}

    @app.post("/api/network/propagate")
    def propagate(body: PropagateBody):
        external = {(item.chip, item.input): item.value for item in body.external}
        try:
            results = session.propagate(external)
        except NetworkError as exc:
            return _error(400, str(exc))
        return {
            "outputs": [
                {"chip": chip, "output": index, "value": value}
                for (chip, index), value in sorted(results.items())
            ]
        }

    static_path = Path(static_dir) if static_dir else None
    if static_path and static_path.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_path, html=True), name="ui")
    else:

        @app.get("/", response_class=HTMLResponse)
        def index():
            return (
                "<html><body><h1>fuzzchip workbench</h1>"
                "<p>API is up. Build the web UI (frontend/) and serve it with "
                "<code>--static frontend/dist</code>.</p></body></html>"
            )

    return app
