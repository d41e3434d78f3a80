"""Board values, move legality and move application.

A Board is an immutable pair of a piece set and a move history (newest
first).  The history is the only record of the past: castling rights and
en-passant windows are derived from it rather than stored.  Applying a
move never mutates anything; it builds a new Board value.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from typing import Optional

from .pieces import (
    Colour,
    Coordinate,
    DIAGONAL_DIRECTIONS,
    KNIGHT_OFFSETS,
    ORTHOGONAL_DIRECTIONS,
    Piece,
    PieceType,
    coordinate_factory,
    moves_with_colours,
    opposite_colour,
    pieces_to_obstacles,
    type_based_moves,
)

PAWN = PieceType.PAWN
ROOK = PieceType.ROOK
KNIGHT = PieceType.KNIGHT
BISHOP = PieceType.BISHOP
QUEEN = PieceType.QUEEN
KING = PieceType.KING

PROMOTABLE_TYPES = frozenset({KNIGHT, BISHOP, ROOK, QUEEN})


class IllegalMoveError(ValueError):
    """A move rejected by the legality gate, or a piece that is not on the
    board it is being moved on."""


def _last_rank(colour: Colour) -> int:
    return 8 if colour is Colour.WHITE else 1


@dataclass(frozen=True)
class Move:
    """A move as a from-piece/to-piece pair.

    The destination is a full Piece rather than a bare square so that
    promotion (a pawn arriving with a new type) needs no extra field.
    Castling is the king's two-file jump; en passant a pawn's diagonal
    step onto an empty square.
    """

    from_: Piece
    to_: Piece

    def __post_init__(self) -> None:
        if self.from_.colour is not self.to_.colour:
            raise ValueError("a move cannot change colour")
        if self.from_.square == self.to_.square:
            raise ValueError("a move must change square")
        if self.from_.type is not self.to_.type and not (
            self.from_.type is PAWN
            and self.to_.square.y == _last_rank(self.from_.colour)
        ):
            raise ValueError("only a pawn reaching the last rank may change type")


BoardState = frozenset[Piece]

History = tuple[Move, ...]


@dataclass(frozen=True)
class Board:
    """An immutable board: the pieces on it plus the moves that led there,
    most recent move first."""

    board_state: BoardState
    history: History = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "board_state", frozenset(self.board_state))
        object.__setattr__(self, "history", tuple(self.history))
        if not self.board_state:
            raise ValueError("a board must hold at least one piece")
        squares = [(p.square.x, p.square.y) for p in self.board_state]
        if len(set(squares)) != len(squares):
            raise ValueError("two pieces share a square")
        for colour in Colour:
            kings = [
                p for p in self.board_state
                if p.type is KING and p.colour is colour
            ]
            if len(kings) > 1:
                raise ValueError(f"more than one {colour.value} king")


_BACK_RANK = (ROOK, KNIGHT, BISHOP, QUEEN, KING, BISHOP, KNIGHT, ROOK)


def default_board() -> Board:
    """The standard initial position with an empty history."""
    pieces = set()
    for x, piece_type in enumerate(_BACK_RANK, start=1):
        pieces.add(Piece(piece_type, Coordinate(x, 1), Colour.WHITE))
        pieces.add(Piece(PAWN, Coordinate(x, 2), Colour.WHITE))
        pieces.add(Piece(PAWN, Coordinate(x, 7), Colour.BLACK))
        pieces.add(Piece(piece_type, Coordinate(x, 8), Colour.BLACK))
    return Board(frozenset(pieces), ())


# --- occupancy helpers ------------------------------------------------------

Occupancy = dict[tuple[int, int], Piece]


def _occupancy(state: BoardState) -> Occupancy:
    return {(p.square.x, p.square.y): p for p in state}


def _colours_of(occ: Occupancy) -> dict[tuple[int, int], Colour]:
    return {sq: p.colour for sq, p in occ.items()}


_SLIDER_PROBES = (
    (ORTHOGONAL_DIRECTIONS, (ROOK, QUEEN)),
    (DIAGONAL_DIRECTIONS, (BISHOP, QUEEN)),
)


def _square_attacked(occ: Occupancy, x: int, y: int, by: Colour) -> bool:
    """Whether colour `by` attacks square (x, y), probing outward from it.

    Equivalent to membership in attacked_squares for any square not held
    by one of `by`'s own pieces; kept separate because the per-candidate
    legality filter calls it millions of times in perft runs.
    """
    occ_get = occ.get
    pawn_rank = y - 1 if by is Colour.WHITE else y + 1
    p = occ_get((x - 1, pawn_rank))
    if p is not None and p.colour is by and p.type is PAWN:
        return True
    p = occ_get((x + 1, pawn_rank))
    if p is not None and p.colour is by and p.type is PAWN:
        return True
    for dx, dy in KNIGHT_OFFSETS:
        p = occ_get((x + dx, y + dy))
        if p is not None and p.colour is by and p.type is KNIGHT:
            return True
    for directions, sliders in _SLIDER_PROBES:
        for dx, dy in directions:
            nx, ny = x + dx, y + dy
            adjacent = True
            while 1 <= nx <= 8 and 1 <= ny <= 8:
                p = occ_get((nx, ny))
                if p is not None:
                    if p.colour is by and (
                        p.type in sliders or (adjacent and p.type is KING)
                    ):
                        return True
                    break
                nx += dx
                ny += dy
                adjacent = False
    return False


def attacked_squares(state: BoardState, by: Colour) -> frozenset[Coordinate]:
    """Every square colour `by` attacks: the union of its pieces' movement
    patterns, except that pawns attack only their two forward diagonals
    (occupied or not) and never the square in front of them."""
    obstacles = pieces_to_obstacles(state)
    attacked: set[Coordinate] = set()
    for p in state:
        if p.colour is not by:
            continue
        if p.type is PAWN:
            dy = 1 if by is Colour.WHITE else -1
            for dx in (-1, 1):
                diagonal = coordinate_factory(p.square.x + dx, p.square.y + dy)
                if diagonal is not None:
                    attacked.add(diagonal)
        else:
            attacked |= type_based_moves(p, obstacles)
    return frozenset(attacked)


def _king_of(state: BoardState, colour: Colour) -> Optional[Piece]:
    for p in state:
        if p.type is KING and p.colour is colour:
            return p
    return None


def in_check(state: BoardState, colour: Colour) -> bool:
    """Whether `colour`'s king stands on a square its opponent attacks."""
    king = _king_of(state, colour)
    if king is None:
        raise ValueError(f"no {colour.value} king on the board")
    return _square_attacked(
        _occupancy(state), king.square.x, king.square.y, opposite_colour(colour)
    )


# --- special moves ----------------------------------------------------------


def _require_piece(board_or_state, piece: Piece, piece_type=None) -> None:
    state = (
        board_or_state.board_state
        if isinstance(board_or_state, Board)
        else board_or_state
    )
    if piece not in state:
        raise IllegalMoveError(f"piece not on the board: {piece}")
    if piece_type is not None and piece.type is not piece_type:
        raise IllegalMoveError(f"expected a {piece_type.value}, got {piece.type.value}")


def pawn_move_two(state: BoardState, pawn: Piece) -> frozenset[Move]:
    """The two-square advance, available only from the pawn's initial rank
    with both the skipped and the target square empty."""
    _require_piece(state, pawn, PAWN)
    return frozenset(_double_push(_occupancy(state), pawn))


def _double_push(occ: Occupancy, pawn: Piece) -> list[Move]:
    white = pawn.colour is Colour.WHITE
    if pawn.square.y != (2 if white else 7):
        return []
    dy = 1 if white else -1
    x, y = pawn.square.x, pawn.square.y
    if (x, y + dy) in occ or (x, y + 2 * dy) in occ:
        return []
    return [Move(pawn, Piece(PAWN, Coordinate(x, y + 2 * dy), pawn.colour))]


def en_passant(board: Board, pawn: Piece) -> frozenset[Move]:
    """The en-passant capture, legal exactly one ply after an enemy pawn's
    double push lands beside this pawn; the capture moves onto the square
    the enemy pawn skipped."""
    _require_piece(board, pawn, PAWN)
    return frozenset(_en_passant_moves(board.history, pawn))


def _en_passant_moves(history: History, pawn: Piece) -> list[Move]:
    if not history:
        return []
    last = history[0]
    if (
        last.from_.type is not PAWN
        or last.from_.colour is pawn.colour
        or abs(last.to_.square.y - last.from_.square.y) != 2
        or last.to_.square.y != pawn.square.y
        or abs(last.to_.square.x - pawn.square.x) != 1
    ):
        return []
    skipped = Coordinate(
        last.to_.square.x, (last.from_.square.y + last.to_.square.y) // 2
    )
    return [Move(pawn, Piece(PAWN, skipped, pawn.colour))]


def pawn_promotion(state: BoardState, pawn: Piece) -> frozenset[Move]:
    """Four moves (one per promotable type) for every square the pawn can
    reach on the last rank."""
    _require_piece(state, pawn, PAWN)
    colours = {(p.square.x, p.square.y): p.colour for p in state}
    return frozenset(_promotions(colours, pawn))


def _promotions(colours, pawn: Piece) -> list[Move]:
    last = _last_rank(pawn.colour)
    moves = []
    for target in moves_with_colours(pawn, colours):
        if target.y == last:
            for new_type in PROMOTABLE_TYPES:
                moves.append(Move(pawn, Piece(new_type, target, pawn.colour)))
    return moves


# (corner file, crossed file, king destination file) per wing
_CASTLING_WINGS = ((8, 6, 7), (1, 4, 3))


def castling_possible(board: Board, king: Piece) -> frozenset[Move]:
    """The castling moves currently available to this king.

    A wing qualifies only if the king stands on its initial square with a
    same-colour rook on the corner, no recorded move ever left or entered
    either square, the squares between them are empty, the king is not in
    check, and neither the crossed square nor the destination is attacked.
    """
    _require_piece(board, king, KING)
    return frozenset(_castling_moves(_occupancy(board.board_state), board.history, king))


def _castling_moves(occ: Occupancy, history: History, king: Piece) -> list[Move]:
    y = 1 if king.colour is Colour.WHITE else 8
    if king.square.x != 5 or king.square.y != y:
        return []
    enemy = opposite_colour(king.colour)
    if _square_attacked(occ, 5, y, enemy):
        return []
    moves = []
    for corner_x, crossed_x, dest_x in _CASTLING_WINGS:
        rook = occ.get((corner_x, y))
        if rook is None or rook.type is not ROOK or rook.colour is not king.colour:
            continue
        between = range(min(5, corner_x) + 1, max(5, corner_x))
        if any((x, y) in occ for x in between):
            continue
        touched = {(5, y), (corner_x, y)}
        if any(
            (m.from_.square.x, m.from_.square.y) in touched
            or (m.to_.square.x, m.to_.square.y) in touched
            for m in history
        ):
            continue
        if _square_attacked(occ, crossed_x, y, enemy) or _square_attacked(
            occ, dest_x, y, enemy
        ):
            continue
        moves.append(Move(king, Piece(KING, Coordinate(dest_x, y), king.colour)))
    return moves


def stateful_possible_moves(board: Board, piece: Piece) -> frozenset[Move]:
    """The special moves available to a piece: double push, en passant and
    promotion for pawns, castling for kings, nothing for the rest."""
    _require_piece(board, piece)
    occ = _occupancy(board.board_state)
    return frozenset(_stateful_candidates(occ, _colours_of(occ), board.history, piece))


def _stateful_candidates(occ, colours, history, piece: Piece) -> list[Move]:
    if piece.type is PAWN:
        return (
            _double_push(occ, piece)
            + _en_passant_moves(history, piece)
            + _promotions(colours, piece)
        )
    if piece.type is KING:
        return _castling_moves(occ, history, piece)
    return []


# --- legality ---------------------------------------------------------------


def _candidate_moves(occ, colours, history, piece: Piece) -> list[Move]:
    """Simple moves lifted to Move values, plus the special moves."""
    candidates = [
        Move(piece, Piece(piece.type, target, piece.colour))
        for target in moves_with_colours(piece, colours)
    ]
    candidates.extend(_stateful_candidates(occ, colours, history, piece))
    return candidates


def _is_en_passant_shape(occ: Occupancy, mov: Move) -> bool:
    return (
        mov.from_.type is PAWN
        and mov.from_.square.x != mov.to_.square.x
        and (mov.to_.square.x, mov.to_.square.y) not in occ
    )


def _leaves_king_attacked(
    occ: Occupancy, mov: Move, king: Optional[Piece], king_checked: bool
) -> bool:
    """Apply mov to a scratch copy of the occupancy and probe the mover's
    king.  A missing king (synthetic positions) can never be attacked.

    When the king is not already in check, a move by another piece can
    only expose it by vacating a square on a line through the king (or by
    the en-passant removal of a third piece), so anything else is safe
    without the probe: occupying a square never opens a line, and an
    ordinary capture replaces the victim on its own square.
    """
    if king is None:
        return False
    fx, fy = mov.from_.square.x, mov.from_.square.y
    tx, ty = mov.to_.square.x, mov.to_.square.y
    is_ep = _is_en_passant_shape(occ, mov)
    if mov.from_.type is not KING:
        kx, ky = king.square.x, king.square.y
        if not king_checked and not is_ep:
            dx, dy = fx - kx, fy - ky
            if dx != 0 and dy != 0 and dx != dy and dx != -dy:
                return False
    scratch = dict(occ)
    del scratch[(fx, fy)]
    if is_ep:
        scratch.pop((tx, fy), None)
    scratch[(tx, ty)] = mov.to_
    if mov.from_.type is KING:
        if abs(tx - fx) == 2:  # castling also relocates the rook
            corner_x = 8 if tx > fx else 1
            rook = scratch.pop((corner_x, fy), None)
            if rook is not None:
                scratch[((fx + tx) // 2, fy)] = rook
        kx, ky = tx, ty
    return _square_attacked(scratch, kx, ky, opposite_colour(mov.from_.colour))


def _missed_promotion(mov: Move) -> bool:
    return (
        mov.from_.type is PAWN
        and mov.to_.type is PAWN
        and mov.to_.square.y == _last_rank(mov.from_.colour)
    )


def _king_context(occ: Occupancy, state: BoardState, colour: Colour):
    """The mover's king and whether it currently stands in check."""
    king = _king_of(state, colour)
    checked = king is not None and _square_attacked(
        occ, king.square.x, king.square.y, opposite_colour(colour)
    )
    return king, checked


def stateful_impossible_moves(board: Board, piece: Piece) -> frozenset[Move]:
    """The candidate moves the rules forbid: any move that leaves the
    mover's own king in check, and any pawn move onto the last rank that
    keeps the pawn a pawn (promotion is mandatory)."""
    _require_piece(board, piece)
    occ = _occupancy(board.board_state)
    colours = _colours_of(occ)
    king, checked = _king_context(occ, board.board_state, piece.colour)
    return frozenset(
        m
        for m in _candidate_moves(occ, colours, board.history, piece)
        if _missed_promotion(m) or _leaves_king_attacked(occ, m, king, checked)
    )


def possible_moves(board: Board, piece: Piece) -> frozenset[Move]:
    """Every legal move for one piece: its simple moves lifted to Move
    values, plus its special moves, minus the impossible ones."""
    _require_piece(board, piece)
    occ = _occupancy(board.board_state)
    colours = _colours_of(occ)
    king, checked = _king_context(occ, board.board_state, piece.colour)
    return frozenset(
        _legal_for_piece(occ, colours, board.history, piece, king, checked)
    )


def _legal_for_piece(occ, colours, history, piece: Piece, king, checked) -> list[Move]:
    return [
        m
        for m in _candidate_moves(occ, colours, history, piece)
        if not _missed_promotion(m)
        and not _leaves_king_attacked(occ, m, king, checked)
    ]


def legal_moves(board: Board, colour: Colour) -> frozenset[Move]:
    """Every legal move for one side; the union of possible_moves over its
    pieces, sharing one occupancy scan."""
    occ = _occupancy(board.board_state)
    colours = _colours_of(occ)
    king, checked = _king_context(occ, board.board_state, colour)
    moves: list[Move] = []
    for piece in board.board_state:
        if piece.colour is colour:
            moves.extend(
                _legal_for_piece(occ, colours, board.history, piece, king, checked)
            )
    return frozenset(moves)


def has_legal_move(board: Board, colour: Colour) -> bool:
    """Whether the side has any legal move; stops at the first one found.

    Equivalent to `bool(legal_moves(board, colour))` but cheap in the
    common case, which matters when every played move must test the
    opponent for mate or stalemate.
    """
    occ = _occupancy(board.board_state)
    colours = _colours_of(occ)
    king, checked = _king_context(occ, board.board_state, colour)
    for piece in board.board_state:
        if piece.colour is not colour:
            continue
        for m in _candidate_moves(occ, colours, board.history, piece):
            if not _missed_promotion(m) and not _leaves_king_attacked(
                occ, m, king, checked
            ):
                return True
    return False


# --- move application -------------------------------------------------------


def iss_castling(board: Board, mov: Move) -> bool:
    """Whether a (legal) move is a castling: a king jumping two files."""
    return mov.from_.type is KING and abs(mov.to_.square.x - mov.from_.square.x) == 2


def iss_en_passant(board: Board, mov: Move) -> bool:
    """Whether a (legal) move is an en-passant capture: a pawn stepping
    diagonally onto an empty square."""
    return _is_en_passant_shape(_occupancy(board.board_state), mov)


def move(board: Board, mov: Move) -> Board:
    """Apply a move, first checking it against possible_moves.

    This is the engine's single legality gate; illegal moves raise
    IllegalMoveError.  The input board is untouched.
    """
    _require_piece(board, mov.from_)
    if mov not in possible_moves(board, mov.from_):
        raise IllegalMoveError(f"illegal move: {mov}")
    return _apply(board, mov)


def _apply(board: Board, mov: Move) -> Board:
    """Dispatch an already-validated move to its application rule."""
    if mov.from_.type is KING and iss_castling(board, mov):
        return move_castling(board, mov)
    if mov.from_.type is PAWN and iss_en_passant(board, mov):
        return move_en_passant(board, mov)
    return move_other(board, mov)


def move_other(board: Board, mov: Move) -> Board:
    """An ordinary move: drop whatever sat on the target square and the
    moving piece, then add the arriving piece.  Promotion needs no special
    handling because the arriving piece already carries its new type."""
    dead = {p for p in board.board_state if p.square == mov.to_.square}
    new_state = (board.board_state - (dead | {mov.from_})) | {mov.to_}
    return Board(new_state, (mov,) + board.history)


def move_castling(board: Board, mov: Move) -> Board:
    """Castling: the king jumps two files and the corner rook lands on the
    square the king crossed."""
    y = mov.from_.square.y
    corner_x = 8 if mov.to_.square.x > mov.from_.square.x else 1
    rook = next(
        (p for p in board.board_state if p.square == Coordinate(corner_x, y)), None
    )
    if rook is None or rook.type is not ROOK:
        raise IllegalMoveError(f"no rook to castle with on file {corner_x}")
    crossed = Coordinate((mov.from_.square.x + mov.to_.square.x) // 2, y)
    new_rook = Piece(ROOK, crossed, rook.colour)
    new_state = (board.board_state - {mov.from_, rook}) | {mov.to_, new_rook}
    return Board(new_state, (mov,) + board.history)


def move_en_passant(board: Board, mov: Move) -> Board:
    """En passant: the pawn moves diagonally while the captured enemy pawn
    disappears from the square beside it."""
    bypassed = Coordinate(mov.to_.square.x, mov.from_.square.y)
    captured = next(
        (p for p in board.board_state if p.square == bypassed), None
    )
    if captured is None:
        raise IllegalMoveError(f"no pawn to capture en passant on {bypassed}")
    new_state = (board.board_state - {mov.from_, captured}) | {mov.to_}
    return Board(new_state, (mov,) + board.history)


# --- verification oracle ----------------------------------------------------


def perft(board: Board, to_move: Colour, depth: int, jobs: int = 1) -> int:
    """Count the legal move sequences of exactly `depth` plies.

    The standard move-generator correctness oracle.  With jobs > 1 the
    subtrees under each root move run in separate processes; the total is
    a sum, so it does not depend on evaluation order.
    """
    if depth < 0:
        raise ValueError("perft depth must be non-negative")
    if depth == 0:
        return 1
    moves = legal_moves(board, to_move)
    if depth == 1:
        return len(moves)
    nxt = opposite_colour(to_move)
    if jobs > 1:
        tasks = [(_apply(board, m), nxt, depth - 1) for m in moves]
        with multiprocessing.Pool(jobs) as pool:
            return sum(pool.starmap(perft, tasks))
    return sum(perft(_apply(board, m), nxt, depth - 1) for m in moves)


# --- display ----------------------------------------------------------------

_PIECE_LETTERS = {
    PAWN: "p", ROOK: "r", KNIGHT: "n", BISHOP: "b", QUEEN: "q", KING: "k",
}


def board_to_ascii(state: BoardState) -> str:
    """An 8x8 text diagram, rank 8 on top; white pieces are uppercase,
    black lowercase, empty squares dots."""
    occ = _occupancy(state)
    rows = []
    for y in range(8, 0, -1):
        cells = []
        for x in range(1, 9):
            p = occ.get((x, y))
            if p is None:
                cells.append(".")
            else:
                letter = _PIECE_LETTERS[p.type]
                cells.append(letter.upper() if p.colour is Colour.WHITE else letter)
        rows.append(" ".join(cells))
    return "\n".join(rows)
