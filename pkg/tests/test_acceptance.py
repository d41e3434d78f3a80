"""Acceptance suite: each criterion prints one pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as the
criteria execute; without -s they appear in captured output on failure.
"""

import multiprocessing
import os
import pickle
import random
import time
from pathlib import Path

from chessval.board import (
    Board,
    Move,
    castling_possible,
    default_board,
    en_passant,
    in_check,
    move,
    pawn_promotion,
    perft,
    possible_moves,
)
from chessval.game import REMIS, Game, game_move, new_game
from chessval.pgn import (
    CheckMark,
    parse_pgn,
    resolve_san,
    serialize_game,
)
from chessval.pieces import Colour, Coordinate, Piece, PieceType

from drivers import check_game_invariants
from oracles import move_key, oracle_legal_moves, random_sparse_board

W, B = Colour.WHITE, Colour.BLACK
PAWN, ROOK, KNIGHT = PieceType.PAWN, PieceType.ROOK, PieceType.KNIGHT
BISHOP, QUEEN, KING = PieceType.BISHOP, PieceType.QUEEN, PieceType.KING

CORPUS = Path(__file__).parent / "data" / "corpus.pgn"


def C(x, y):
    return Coordinate(x, y)


def P(piece_type, x, y, colour=W):
    return Piece(piece_type, C(x, y), colour)


def M(from_piece, x, y, new_type=None):
    to_type = new_type if new_type is not None else from_piece.type
    return Move(from_piece, Piece(to_type, C(x, y), from_piece.colour))


FOOLS_MATE = (
    M(P(PAWN, 6, 2), 6, 3),
    M(P(PAWN, 5, 7, B), 5, 5),
    M(P(PAWN, 7, 2), 7, 4),
    M(P(QUEEN, 4, 8, B), 8, 4),
)


def _report(criterion: int, passed: bool, detail: str) -> None:
    status = "PASS" if passed else "FAIL"
    print(f"acceptance criterion {criterion}: {status} - {detail}")
    assert passed, f"criterion {criterion}: {detail}"


def test_criterion_1_perft_matches_published_tables():
    expected = {1: 20, 2: 400, 3: 8902, 4: 197281, 5: 4865609}
    board = default_board()
    start = time.perf_counter()
    counts = {depth: perft(board, W, depth) for depth in (1, 2, 3, 4)}
    shallow_time = time.perf_counter() - start
    counts[5] = perft(board, W, 5, jobs=os.cpu_count() or 1)
    passed = counts == expected and shallow_time < 60.0
    _report(
        1,
        passed,
        f"perft(1..5) = {[counts[d] for d in (1, 2, 3, 4, 5)]}, "
        f"depths 1-4 in {shallow_time:.1f}s (limit 60s)",
    )


def test_criterion_2_invariants_over_ten_thousand_random_games():
    games = 10_000
    try:
        with multiprocessing.Pool(os.cpu_count() or 1) as pool:
            plies = pool.map(check_game_invariants, range(games), chunksize=200)
        passed, detail = True, (
            f"{games} random games ({sum(plies)} plies) without violating "
            "square-uniqueness, king counts, pawn ranks, history growth or "
            "mover-in-check"
        )
    except AssertionError as exc:
        passed, detail = False, f"invariant violated: {exc}"
    _report(2, passed, detail)


def test_criterion_3_special_move_conformance():
    failures = []

    king = P(KING, 5, 1)
    open_board = Board({king, P(ROOK, 8, 1)})
    if castling_possible(open_board, king) != {M(king, 7, 1)}:
        failures.append("castling unavailable on the open fixture")
    king_moved = Board(
        open_board.board_state,
        (M(P(KING, 6, 1), 5, 1), M(P(KING, 5, 1), 6, 1)),
    )
    if castling_possible(king_moved, king) != frozenset():
        failures.append("castling survived a king move")
    rook_moved = Board(
        open_board.board_state,
        (M(P(ROOK, 8, 2), 8, 1), M(P(ROOK, 8, 1), 8, 2)),
    )
    if castling_possible(rook_moved, king) != frozenset():
        failures.append("castling survived a rook move")
    crossing_attacked = Board({king, P(ROOK, 8, 1), P(ROOK, 6, 8, B)})
    if castling_possible(crossing_attacked, king) != frozenset():
        failures.append("castling crossed an attacked square")

    opening = default_board()
    for mov in (
        M(P(PAWN, 5, 2), 5, 4),
        M(P(PAWN, 1, 7, B), 1, 6),
        M(P(PAWN, 5, 4), 5, 5),
        M(P(PAWN, 4, 7, B), 4, 5),
    ):
        opening = move(opening, mov)
    pawn = P(PAWN, 5, 5)
    if en_passant(opening, pawn) != {M(pawn, 4, 6)}:
        failures.append("en passant missing right after the double push")
    one_ply_later = move(opening, M(P(KNIGHT, 2, 1), 3, 3))
    one_ply_later = move(one_ply_later, M(P(KNIGHT, 2, 8, B), 3, 6))
    if en_passant(one_ply_later, pawn) != frozenset():
        failures.append("en passant right survived an unrelated ply")

    promoter = P(PAWN, 1, 7)
    promo_board = Board({promoter})
    produced = pawn_promotion(promo_board.board_state, promoter)
    if {m.to_.type for m in produced} != {QUEEN, ROOK, BISHOP, KNIGHT}:
        failures.append("promotion did not offer all four types")
    legal = possible_moves(promo_board, promoter)
    if M(promoter, 1, 8) in legal or len(legal) != 4:
        failures.append("a non-promoting last-rank move escaped the filter")

    _report(
        3,
        not failures,
        "castling, en passant and promotion fixtures"
        + ("" if not failures else f": {failures}"),
    )


def test_criterion_4_terminal_detection_by_game_move():
    game = new_game()
    winner = None
    for mov in FOOLS_MATE:
        game, winner = game_move(game, mov)
    mate_detected = winner is B

    queen = P(QUEEN, 7, 5)
    stale_game = Game(Board({P(KING, 8, 8, B), queen, P(KING, 6, 7)}), W)
    _, stale_winner = game_move(stale_game, M(queen, 7, 6))
    stalemate_detected = stale_winner is REMIS

    _report(
        4,
        mate_detected and stalemate_detected,
        f"fool's mate winner={winner}, stalemate outcome={stale_winner}",
    )


def test_criterion_5_corpus_round_trip_and_mate_agreement():
    games = parse_pgn(CORPUS.read_text())
    mismatches = []
    mark_conflicts = []
    for number, parsed in enumerate(games, start=1):
        game = new_game()
        moves = []
        for token in parsed.tokens:
            resolved = resolve_san(token, game)
            game, winner = game_move(game, resolved)
            moves.append(resolved)
            engine_says_mate = winner is W or winner is B
            if engine_says_mate != (token.check_mark is CheckMark.MATE):
                mark_conflicts.append(number)
        serialized = serialize_game(parsed.tags, moves, parsed.result)
        (reparsed,) = parse_pgn(serialized)
        if reparsed.tokens != parsed.tokens:
            mismatches.append(number)
    passed = len(games) >= 100 and not mismatches and not mark_conflicts
    _report(
        5,
        passed,
        f"{len(games)} corpus games replayed; round-trip mismatches: "
        f"{mismatches or 'none'}; mate-mark conflicts: {mark_conflicts or 'none'}",
    )


def test_criterion_6_oracle_equivalence_on_sparse_positions():
    rng = random.Random(6502)
    disagreements = 0
    positions = 500
    for _ in range(positions):
        board, to_move = random_sparse_board(rng)
        engine = {
            move_key(m)
            for piece in board.board_state
            if piece.colour is to_move
            for m in possible_moves(board, piece)
        }
        if engine != oracle_legal_moves(board, to_move):
            disagreements += 1
    _report(
        6,
        disagreements == 0,
        f"{positions} positions with <= 6 pieces, "
        f"{disagreements} generator/oracle disagreements",
    )


def test_criterion_7_move_application_is_pure():
    rng = random.Random(42)
    checked = 0
    damaged = 0
    game = new_game()
    winner = None
    for _ in range(120):
        board = game.board
        snapshot = pickle.loads(pickle.dumps(board))
        options = sorted(
            (m for p in board.board_state if p.colour is game.turn
             for m in possible_moves(board, p)),
            key=move_key,
        )
        chosen = rng.choice(options)
        move(board, chosen)
        if board != snapshot:
            damaged += 1
        checked += 1
        game, winner = game_move(game, chosen)
        if winner is not None:
            game = new_game()
            winner = None
    _report(
        7,
        damaged == 0,
        f"{checked} applications left the input board value untouched",
    )
