"""Interconnect chip objects into an acyclic cascade and propagate inputs.

A connection routes one chip's crisp (defuzzified) output into another
chip's input, where it is re-quantized in the destination universe.
Fan-out is unrestricted; each destination input has exactly one driver,
either a connection or an external assertion.
"""

from __future__ import annotations

from dataclasses import dataclass

from fuzzchip.engine import ChipObject, assert_input


class NetworkError(ValueError):
    pass


@dataclass(frozen=True)
class Connection:
    src: str
    src_output: int
    dst: str
    dst_input: int

    def canonical(self) -> "Connection":
        return Connection(self.src.upper(), self.src_output, self.dst.upper(), self.dst_input)


class ChipNetwork:
    """Named chips plus directed connections; names are case-insensitive."""

    def __init__(self):
        self._chips: dict[str, ChipObject] = {}
        self._connections: list[Connection] = []

    @property
    def chips(self) -> dict[str, ChipObject]:
        return dict(self._chips)

    @property
    def connections(self) -> list[Connection]:
        return list(self._connections)

    def add_chip(self, chip: ChipObject) -> None:
        key = chip.name.upper()
        if key in self._chips:
            raise NetworkError(f"duplicate chip name {chip.name!r}")
        self._chips[key] = chip

    def replace_chip(self, chip: ChipObject) -> None:
        """Swap in an updated snapshot; the chip must already exist."""
        key = chip.name.upper()
        if key not in self._chips:
            raise NetworkError(f"unknown chip {chip.name!r}")
        self._chips[key] = chip

    def get_chip(self, name: str) -> ChipObject:
        try:
            return self._chips[name.upper()]
        except KeyError:
            raise NetworkError(f"unknown chip {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name.upper() in self._chips

    def connect(self, conn: Connection) -> list[str]:
        """Add a connection; returns lint warnings (never errors) about
        source universes that do not fit inside the destination universe.
        """
        conn = conn.canonical()
        src = self.get_chip(conn.src)
        dst = self.get_chip(conn.dst)
        if not 0 <= conn.src_output < src.n_outputs:
            raise NetworkError(
                f"{conn.src} has no output {conn.src_output} (outputs 0..{src.n_outputs - 1})"
            )
        if not 0 <= conn.dst_input < dst.n_inputs:
            raise NetworkError(
                f"{conn.dst} has no input {conn.dst_input} (inputs 0..{dst.n_inputs - 1})"
            )
        if any(
            c.dst == conn.dst and c.dst_input == conn.dst_input
            for c in self._connections
        ):
            raise NetworkError(f"input {conn.dst}.in[{conn.dst_input}] is already driven")
        if conn.src == conn.dst or self._reaches(conn.dst, conn.src):
            raise NetworkError(
                f"connection {conn.src} -> {conn.dst} would create a cycle"
            )
        self._connections.append(conn)
        warnings = []
        src_u = src.output_universes[conn.src_output]
        dst_u = dst.input_universes[conn.dst_input]
        if src_u.lo < dst_u.lo or src_u.hi > dst_u.hi:
            warnings.append(
                f"source universe [{src_u.lo}, {src_u.hi}] of {conn.src}.out[{conn.src_output}] "
                f"is not contained in destination universe [{dst_u.lo}, {dst_u.hi}] "
                f"of {conn.dst}.in[{conn.dst_input}]; values outside will clamp"
            )
        return warnings

    def disconnect(self, conn: Connection) -> None:
        conn = conn.canonical()
        try:
            self._connections.remove(conn)
        except ValueError:
            raise NetworkError(f"no such connection {conn}") from None

    def _reaches(self, start: str, target: str) -> bool:
        stack = [start]
        seen = set()
        while stack:
            node = stack.pop()
            if node == target:
                return True
            if node in seen:
                continue
            seen.add(node)
            stack.extend(c.dst for c in self._connections if c.src == node)
        return False

    def _topological_order(self) -> list[str]:
        indegree = {name: 0 for name in self._chips}
        edges: dict[str, set[str]] = {name: set() for name in self._chips}
        for c in self._connections:
            if c.dst not in edges[c.src]:
                edges[c.src].add(c.dst)
                indegree[c.dst] += 1
        ready = [name for name in self._chips if indegree[name] == 0]
        order = []
        while ready:
            node = ready.pop(0)
            order.append(node)
            for nxt in sorted(edges[node]):
                indegree[nxt] -= 1
                if indegree[nxt] == 0:
                    ready.append(nxt)
        if len(order) != len(self._chips):  # pragma: no cover - connect() forbids cycles
            raise NetworkError("network contains a cycle")
        return order

    def propagate(self, external: dict) -> dict:
        """Evaluate every chip once, in dependency order.

        external maps (chip name, input index) to a real value and must
        cover exactly the inputs that no connection drives.  Returns
        (chip name, output index) -> crisp value, with None propagated to
        every output downstream of a no-activation result.
        """
        ext = {(name.upper(), int(i)): v for (name, i), v in external.items()}
        driven = {(c.dst, c.dst_input): c for c in self._connections}

        for (name, i) in ext:
            if name not in self._chips:
                raise NetworkError(f"external input for unknown chip {name!r}")
            if not 0 <= i < self._chips[name].n_inputs:
                raise NetworkError(f"{name} has no input {i}")
            if (name, i) in driven:
                raise NetworkError(
                    f"input {name}.in[{i}] is driven by a connection and cannot be asserted"
                )
        for name, chip in self._chips.items():
            for i in range(chip.n_inputs):
                if (name, i) not in driven and (name, i) not in ext:
                    raise NetworkError(f"missing external input {name}.in[{i}]")

        results: dict[tuple[str, int], float | None] = {}
        for name in self._topological_order():
            chip = self._chips[name]
            xs = []
            dead = False
            for i in range(chip.n_inputs):
                if (name, i) in driven:
                    c = driven[(name, i)]
                    value = results[(c.src, c.src_output)]
                else:
                    value = ext[(name, i)]
                if value is None:
                    dead = True
                    break
                xs.append(float(value))
            if dead:
                for o in range(chip.n_outputs):
                    results[(name, o)] = None
                continue
            inferred = assert_input(chip, xs)
            for o, value in enumerate(inferred.outputs):
                results[(name, o)] = value
        return results
