"""
Necklace Centres - Pattern Automaton
Failure-complete multi-pattern automaton and closed-walk counting over it.
"""

import logging
from collections import OrderedDict, deque
from dataclasses import dataclass, field
from functools import lru_cache
from threading import Lock
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .models import Letters

logger = logging.getLogger(__name__)

# one automaton per ranked boundary word, so both caches are bounded
AUTOMATON_CACHE_SIZE = 256
POWER_CACHE_SIZE = 16


@dataclass
class AutomatonNode:
    """A trie node: the pattern prefix it spells plus its links."""
    prefix: Letters
    children: Dict[int, int] = field(default_factory=dict)
    fail: int = 0
    outputs: Tuple[int, ...] = ()


class PatternAutomaton:
    """
    Aho-Corasick automaton over the alphabet 1..q with a complete transition table.

    ``outputs[s]`` lists the indices of every pattern ending at state s,
    including those reached through the failure chain.
    """

    def __init__(self, q: int, patterns: Iterable[Letters]):
        self.q = q
        self.patterns: Tuple[Letters, ...] = tuple(tuple(p) for p in patterns)
        self.nodes: List[AutomatonNode] = [AutomatonNode(prefix=())]
        self.delta: List[List[int]] = []

        self._matrix: Optional[np.ndarray] = None
        self._powers: "OrderedDict[int, np.ndarray]" = OrderedDict()
        self._lock = Lock()

        for index, pattern in enumerate(self.patterns):
            self._insert(index, pattern)
        self._build()

    def _insert(self, index: int, pattern: Letters) -> None:
        state = 0
        for c in pattern:
            node = self.nodes[state]
            if c not in node.children:
                node.children[c] = len(self.nodes)
                self.nodes.append(AutomatonNode(prefix=node.prefix + (c,)))
            state = node.children[c]
        self.nodes[state].outputs += (index,)

    def _build(self) -> None:
        """Failure links and complete transitions, breadth first from the root."""
        self.delta = [[0] * (self.q + 1) for _ in self.nodes]
        root = self.nodes[0]
        queue: deque = deque()

        for c in range(1, self.q + 1):
            child = root.children.get(c)
            if child is None:
                self.delta[0][c] = 0
            else:
                self.delta[0][c] = child
                self.nodes[child].fail = 0
                queue.append(child)

        while queue:
            state = queue.popleft()
            node = self.nodes[state]
            node.outputs = node.outputs + self.nodes[node.fail].outputs
            for c in range(1, self.q + 1):
                child = node.children.get(c)
                if child is None:
                    self.delta[state][c] = self.delta[node.fail][c]
                else:
                    self.delta[state][c] = child
                    self.nodes[child].fail = self.delta[node.fail][c]
                    queue.append(child)

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def max_depth(self) -> int:
        return max((len(p) for p in self.patterns), default=0)

    def step(self, state: int, c: int) -> int:
        return self.delta[state][c]

    def outputs(self, state: int) -> Tuple[int, ...]:
        return self.nodes[state].outputs

    def is_dead(self, state: int) -> bool:
        return bool(self.nodes[state].outputs)

    def live_states(self) -> List[int]:
        return [s for s in range(self.size) if not self.is_dead(s)]

    def transfer_matrix(self) -> np.ndarray:
        """Transition counts between live states (object dtype, exact integers)."""
        live = self.live_states()
        position = {s: i for i, s in enumerate(live)}
        matrix = np.zeros((len(live), len(live)), dtype=object)
        for s in live:
            for c in range(1, self.q + 1):
                target = self.delta[s][c]
                if target in position:
                    matrix[position[s], position[target]] += 1
        return matrix

    def closed_walks(self, n: int) -> int:
        """
        Number of length-n closed walks through live states: trace of M^n.

        After one full period the state no longer depends on where the walk
        started, so each word whose periodic extension avoids every pattern
        is counted exactly once.
        """
        with self._lock:
            power = self._powers.get(n)
            if power is None:
                if self._matrix is None:
                    self._matrix = self.transfer_matrix()
                if self._matrix.shape[0] == 0:
                    return 0
                power = np.linalg.matrix_power(self._matrix, n)
                self._powers[n] = power
                if len(self._powers) > POWER_CACHE_SIZE:
                    self._powers.popitem(last=False)
            else:
                self._powers.move_to_end(n)
        return int(np.trace(power))


@lru_cache(maxsize=AUTOMATON_CACHE_SIZE)
def automaton_for(q: int, patterns: Tuple[Letters, ...]) -> PatternAutomaton:
    return PatternAutomaton(q, patterns)


def count_cyclic_avoiding_patterns(q: int, n: int, patterns: Iterable[Letters]) -> int:
    """Words x of length n whose periodic extension contains none of the patterns."""
    key = tuple(sorted(set(tuple(p) for p in patterns)))
    if not key:
        return q ** n
    return automaton_for(q, key).closed_walks(n)
