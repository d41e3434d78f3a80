"""Minimal FEN reading, used to feed perft test positions.

Only piece placement and the side to move are required.  Castling and
en-passant fields are honoured when present by synthesizing a history
that makes the history-derived rules agree with them; move counters are
accepted and ignored.
"""

from __future__ import annotations

from .board import Board, Move
from .game import Game
from .pgn import FILE_TO_X
from .pieces import Colour, Coordinate, Piece, PieceType


class FenError(ValueError):
    """Input that is not a readable FEN position."""


_LETTER_TO_TYPE = {
    "p": PieceType.PAWN,
    "n": PieceType.KNIGHT,
    "b": PieceType.BISHOP,
    "r": PieceType.ROOK,
    "q": PieceType.QUEEN,
    "k": PieceType.KING,
}

# castling-rights letter -> (colour, rook corner file)
_RIGHTS = {
    "K": (Colour.WHITE, 8),
    "Q": (Colour.WHITE, 1),
    "k": (Colour.BLACK, 8),
    "q": (Colour.BLACK, 1),
}


def _parse_placement(placement: str) -> set[Piece]:
    ranks = placement.split("/")
    if len(ranks) != 8:
        raise FenError(f"expected 8 ranks, got {len(ranks)}")
    pieces: set[Piece] = set()
    for offset, row in enumerate(ranks):
        y = 8 - offset
        x = 1
        for ch in row:
            if ch.isdigit():
                x += int(ch)
            elif ch.lower() in _LETTER_TO_TYPE:
                if x > 8:
                    raise FenError(f"rank {y} overflows the board")
                colour = Colour.WHITE if ch.isupper() else Colour.BLACK
                pieces.add(Piece(_LETTER_TO_TYPE[ch.lower()], Coordinate(x, y), colour))
                x += 1
            else:
                raise FenError(f"unexpected character {ch!r} in rank {y}")
        if x != 9:
            raise FenError(f"rank {y} does not span 8 files")
    return pieces


def _rights_killer(colour: Colour, corner_x: int) -> Move:
    """A synthetic history entry touching a rook corner, which revokes the
    corresponding castling right under the history-derived rule."""
    y = 1 if colour is Colour.WHITE else 8
    step = 1 if colour is Colour.WHITE else -1
    return Move(
        Piece(PieceType.ROOK, Coordinate(corner_x, y), colour),
        Piece(PieceType.ROOK, Coordinate(corner_x, y + step), colour),
    )


def _en_passant_push(square: str, to_move: Colour, occupied) -> Move:
    if len(square) != 2 or square[0] not in FILE_TO_X or not square[1].isdigit():
        raise FenError(f"bad en-passant square {square!r}")
    x, y = FILE_TO_X[square[0]], int(square[1])
    expected_rank = 6 if to_move is Colour.WHITE else 3
    if y != expected_rank:
        raise FenError(
            f"en-passant square {square!r} is not on rank {expected_rank}"
        )
    pusher = Colour.BLACK if to_move is Colour.WHITE else Colour.WHITE
    from_y, to_y = (7, 5) if pusher is Colour.BLACK else (2, 4)
    pawn_square = Coordinate(x, to_y)
    pawn = occupied.get((x, to_y))
    if pawn is None or pawn.type is not PieceType.PAWN or pawn.colour is not pusher:
        raise FenError(
            f"en-passant square {square!r} has no matching {pusher.value} pawn"
        )
    if (x, y) in occupied or (x, from_y) in occupied:
        raise FenError(f"en-passant square {square!r} is inconsistent")
    return Move(
        Piece(PieceType.PAWN, Coordinate(x, from_y), pusher),
        Piece(PieceType.PAWN, pawn_square, pusher),
    )


def parse_fen(text: str) -> Game:
    """Read a FEN string into a game value."""
    fields = text.split()
    if len(fields) < 2:
        raise FenError("FEN needs at least piece placement and side to move")
    if len(fields) > 6:
        raise FenError("too many FEN fields")
    pieces = _parse_placement(fields[0])
    if fields[1] == "w":
        to_move = Colour.WHITE
    elif fields[1] == "b":
        to_move = Colour.BLACK
    else:
        raise FenError(f"side to move must be 'w' or 'b', got {fields[1]!r}")

    history: list[Move] = []
    occupied = {(p.square.x, p.square.y): p for p in pieces}

    if len(fields) >= 4 and fields[3] != "-":
        history.append(_en_passant_push(fields[3], to_move, occupied))

    if len(fields) >= 3:
        rights = fields[2]
        if rights != "-":
            for ch in rights:
                if ch not in _RIGHTS:
                    raise FenError(f"bad castling rights {rights!r}")
        granted = set(rights.replace("-", ""))
        for letter, (colour, corner_x) in _RIGHTS.items():
            if letter not in granted:
                history.append(_rights_killer(colour, corner_x))

    for counter in fields[4:6]:
        if not counter.isdigit():
            raise FenError(f"bad move counter {counter!r}")

    try:
        board = Board(frozenset(pieces), tuple(history))
    except ValueError as exc:
        raise FenError(str(exc)) from exc
    return Game(board, to_move)
