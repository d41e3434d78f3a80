"""A literal-rules move oracle, written independently of the engine.

Legal moves are found by brute force: every from/to square pair (and
promotion choice) is checked against the rulebook geometry directly on a
plain square grid, then filtered by simulating the move and scanning all
enemy pieces for an attack on the mover's king.  Nothing here calls the
engine's movement, attack or legality code; only the value types are
shared so results can be compared.
"""

import random

from chessval.board import Board, Move
from chessval.pieces import Colour, Coordinate, Piece, PieceType

W, B = Colour.WHITE, Colour.BLACK
PAWN, ROOK, KNIGHT = PieceType.PAWN, PieceType.ROOK, PieceType.KNIGHT
BISHOP, QUEEN, KING = PieceType.BISHOP, PieceType.QUEEN, PieceType.KING

PROMOTIONS = (QUEEN, ROOK, BISHOP, KNIGHT)

MoveKey = tuple[tuple[int, int], tuple[int, int], str]


def _forward(colour):
    return 1 if colour is W else -1


def _enemy(colour):
    return B if colour is W else W


def _path_clear(grid, fx, fy, tx, ty):
    """No piece on the squares strictly between two ends of a line."""
    dx = (tx > fx) - (tx < fx)
    dy = (ty > fy) - (ty < fy)
    x, y = fx + dx, fy + dy
    while (x, y) != (tx, ty):
        if (x, y) in grid:
            return False
        x += dx
        y += dy
    return True


def oracle_attacked(grid, x, y, by):
    """Whether any piece of colour `by` attacks (x, y), by the book."""
    for (px, py), p in grid.items():
        if p.colour is not by:
            continue
        dx, dy = x - px, y - py
        t = p.type
        if t is PAWN:
            if dy == _forward(by) and abs(dx) == 1:
                return True
        elif t is KNIGHT:
            if {abs(dx), abs(dy)} == {1, 2}:
                return True
        elif t is KING:
            if max(abs(dx), abs(dy)) == 1:
                return True
        elif t is ROOK:
            if (dx == 0) != (dy == 0) and _path_clear(grid, px, py, x, y):
                return True
        elif t is BISHOP:
            if abs(dx) == abs(dy) and _path_clear(grid, px, py, x, y):
                return True
        else:  # queen
            if ((dx == 0) != (dy == 0) or abs(dx) == abs(dy)) and _path_clear(
                grid, px, py, x, y
            ):
                return True
    return False


def _castle_shape(grid, history, king, fx, fy, tx, ty):
    home = 1 if king.colour is W else 8
    if fy != home or ty != home or fx != 5 or abs(tx - fx) != 2:
        return False
    corner = 8 if tx > fx else 1
    rook = grid.get((corner, home))
    if rook is None or rook.type is not ROOK or rook.colour is not king.colour:
        return False
    low, high = sorted((5, corner))
    if any((x, home) in grid for x in range(low + 1, high)):
        return False
    special = {(5, home), (corner, home)}
    for m in history:
        if (m.from_.square.x, m.from_.square.y) in special:
            return False
        if (m.to_.square.x, m.to_.square.y) in special:
            return False
    enemy = _enemy(king.colour)
    crossed = (fx + tx) // 2
    return not (
        oracle_attacked(grid, 5, home, enemy)
        or oracle_attacked(grid, crossed, home, enemy)
        or oracle_attacked(grid, tx, home, enemy)
    )


def _en_passant_shape(history, pawn, fx, fy, tx, ty):
    if not history:
        return False
    last = history[0]
    if last.from_.type is not PAWN or last.from_.colour is pawn.colour:
        return False
    origin, landing = last.from_.square, last.to_.square
    if abs(landing.y - origin.y) != 2 or landing.x != tx or landing.y != fy:
        return False
    return ty == (origin.y + landing.y) // 2 and abs(tx - fx) == 1


def _pseudo_legal(grid, history, piece, fx, fy, tx, ty):
    target = grid.get((tx, ty))
    if target is not None and target.colour is piece.colour:
        return False
    dx, dy = tx - fx, ty - fy
    t = piece.type
    if t is KNIGHT:
        return {abs(dx), abs(dy)} == {1, 2}
    if t is ROOK:
        return (dx == 0) != (dy == 0) and _path_clear(grid, fx, fy, tx, ty)
    if t is BISHOP:
        return abs(dx) == abs(dy) and _path_clear(grid, fx, fy, tx, ty)
    if t is QUEEN:
        return ((dx == 0) != (dy == 0) or abs(dx) == abs(dy)) and _path_clear(
            grid, fx, fy, tx, ty
        )
    if t is KING:
        if max(abs(dx), abs(dy)) == 1:
            return True
        return _castle_shape(grid, history, piece, fx, fy, tx, ty)
    forward = _forward(piece.colour)
    start = 2 if piece.colour is W else 7
    if dx == 0 and dy == forward:
        return target is None
    if dx == 0 and dy == 2 * forward and fy == start:
        return target is None and (fx, fy + forward) not in grid
    if abs(dx) == 1 and dy == forward:
        if target is not None:
            return True
        return _en_passant_shape(history, piece, fx, fy, tx, ty)
    return False


def _apply_to_grid(grid, piece, fx, fy, tx, ty, promo):
    new_grid = dict(grid)
    del new_grid[(fx, fy)]
    if piece.type is PAWN and fx != tx and (tx, ty) not in grid:
        new_grid.pop((tx, fy), None)  # en-passant victim
    new_type = promo if promo is not None else piece.type
    new_grid[(tx, ty)] = Piece(new_type, Coordinate(tx, ty), piece.colour)
    if piece.type is KING and abs(tx - fx) == 2:
        corner = 8 if tx > fx else 1
        rook = new_grid.pop((corner, fy))
        crossed_x = (fx + tx) // 2
        new_grid[(crossed_x, fy)] = Piece(ROOK, Coordinate(crossed_x, fy), rook.colour)
    return new_grid


def _king_safe(grid, piece, fx, fy, tx, ty):
    new_grid = _apply_to_grid(grid, piece, fx, fy, tx, ty, None)
    king_square = None
    for (x, y), p in new_grid.items():
        if p.type is KING and p.colour is piece.colour:
            king_square = (x, y)
            break
    if king_square is None:
        return True
    return not oracle_attacked(new_grid, *king_square, _enemy(piece.colour))


def oracle_legal_moves(board: Board, colour: Colour) -> set[MoveKey]:
    """All legal moves as ((fx, fy), (tx, ty), arriving-type) keys."""
    grid = {(p.square.x, p.square.y): p for p in board.board_state}
    history = board.history
    last_rank = 8 if colour is W else 1
    moves: set[MoveKey] = set()
    for (fx, fy), piece in grid.items():
        if piece.colour is not colour:
            continue
        for tx in range(1, 9):
            for ty in range(1, 9):
                if (tx, ty) == (fx, fy):
                    continue
                if not _pseudo_legal(grid, history, piece, fx, fy, tx, ty):
                    continue
                if not _king_safe(grid, piece, fx, fy, tx, ty):
                    continue
                if piece.type is PAWN and ty == last_rank:
                    for promo in PROMOTIONS:  # promotion is mandatory
                        moves.add(((fx, fy), (tx, ty), promo.value))
                else:
                    moves.add(((fx, fy), (tx, ty), piece.type.value))
    return moves


def move_key(m: Move) -> MoveKey:
    return (
        (m.from_.square.x, m.from_.square.y),
        (m.to_.square.x, m.to_.square.y),
        m.to_.type.value,
    )


def oracle_perft(board: Board, colour: Colour, depth: int) -> int:
    """Brute-force perft built entirely on the oracle's own rules."""
    if depth == 0:
        return 1
    keys = oracle_legal_moves(board, colour)
    if depth == 1:
        return len(keys)
    grid = {(p.square.x, p.square.y): p for p in board.board_state}
    total = 0
    for (fx, fy), (tx, ty), type_name in keys:
        piece = grid[(fx, fy)]
        arriving_type = PieceType(type_name)
        promo = arriving_type if arriving_type is not piece.type else None
        new_grid = _apply_to_grid(grid, piece, fx, fy, tx, ty, promo)
        record = Move(piece, new_grid[(tx, ty)])
        child = Board(frozenset(new_grid.values()), (record,) + board.history)
        total += oracle_perft(child, _enemy(colour), depth - 1)
    return total


# --- random sparse positions --------------------------------------------------

_ALL_SQUARES = [(x, y) for x in range(1, 9) for y in range(1, 9)]
_NON_KING = (PAWN, ROOK, KNIGHT, BISHOP, QUEEN)


def random_sparse_board(rng: random.Random, max_extra: int = 4):
    """A random position with both kings, at most 4 extra pieces, no pawn
    on a terminal rank, and the side to move not already giving check."""
    while True:
        extra = rng.randint(0, max_extra)
        squares = rng.sample(_ALL_SQUARES, extra + 2)
        pieces = {
            Piece(KING, Coordinate(*squares[0]), W),
            Piece(KING, Coordinate(*squares[1]), B),
        }
        for x, y in squares[2:]:
            colour = rng.choice((W, B))
            options = [t for t in _NON_KING if not (t is PAWN and y in (1, 8))]
            pieces.add(Piece(rng.choice(options), Coordinate(x, y), colour))
        to_move = rng.choice((W, B))
        grid = {(p.square.x, p.square.y): p for p in pieces}
        enemy_king = next(
            sq for sq, p in grid.items()
            if p.type is KING and p.colour is _enemy(to_move)
        )
        if oracle_attacked(grid, *enemy_king, to_move):
            continue
        return Board(frozenset(pieces), ()), to_move
