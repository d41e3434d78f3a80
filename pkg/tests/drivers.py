"""Deterministic random-play drivers shared by the test suite and tools."""

import random

from chessval.board import in_check, legal_moves
from chessval.game import game_move, new_game
from chessval.pieces import Colour, PieceType


def canonical_order(moves):
    """Frozenset iteration order is hash-dependent; sort for seeded play."""
    return sorted(
        moves,
        key=lambda m: (
            m.from_.square.x,
            m.from_.square.y,
            m.to_.square.x,
            m.to_.square.y,
            m.to_.type.value,
        ),
    )


def play_random_game(seed: int, max_plies: int = 200):
    """Uniform random legal play until the game ends or the ply cap.

    Returns (moves, winner, final game); winner is None at the cap.
    """
    rng = random.Random(seed)
    game = new_game()
    winner = None
    moves = []
    while winner is None and len(moves) < max_plies:
        options = canonical_order(legal_moves(game.board, game.turn))
        mov = rng.choice(options)
        game, winner = game_move(game, mov)
        moves.append(mov)
    return moves, winner, game


def check_game_invariants(seed: int, max_plies: int = 200) -> int:
    """Play one seeded random game, asserting the reachable-board
    invariants after every ply; returns the number of plies played."""
    rng = random.Random(seed)
    game = new_game()
    winner = None
    plies = 0
    while winner is None and plies < max_plies:
        mover = game.turn
        history_before = len(game.board.history)
        options = canonical_order(legal_moves(game.board, game.turn))
        game, winner = game_move(game, rng.choice(options))
        plies += 1
        state = game.board.board_state
        squares = [(p.square.x, p.square.y) for p in state]
        assert len(set(squares)) == len(squares), "two pieces share a square"
        for colour in Colour:
            kings = sum(
                1 for p in state if p.type is PieceType.KING and p.colour is colour
            )
            assert kings == 1, f"{colour.value} has {kings} kings"
            pawns = sum(
                1 for p in state if p.type is PieceType.PAWN and p.colour is colour
            )
            assert pawns <= 8, f"{colour.value} has {pawns} pawns"
        assert not any(
            p.type is PieceType.PAWN and p.square.y in (1, 8) for p in state
        ), "pawn on a terminal rank"
        assert len(game.board.history) == history_before + 1, "history must grow"
        assert not in_check(state, mover), "mover left itself in check"
    return plies
