"""An immutable-value chess rules engine with PGN tooling.

Every operation is a pure function over frozen values: applying a move
returns a new board, so any position ever reached stays valid and
shareable.  The package also reads and writes PGN, resolves SAN against
live positions, and ships a perft oracle for self-verification.
"""

from .board import (
    Board,
    IllegalMoveError,
    Move,
    attacked_squares,
    board_to_ascii,
    castling_possible,
    default_board,
    en_passant,
    has_legal_move,
    in_check,
    iss_castling,
    iss_en_passant,
    legal_moves,
    move,
    pawn_move_two,
    pawn_promotion,
    perft,
    possible_moves,
    stateful_impossible_moves,
    stateful_possible_moves,
)
from .fen import FenError, parse_fen
from .game import Game, REMIS, Remis, Winner, game_move, new_game
from .pgn import (
    CheckMark,
    GameResult,
    PgnGame,
    PgnParseError,
    SanError,
    SanKind,
    SanToken,
    char_maps,
    move_to_pgn_string,
    parse_pgn,
    resolve_san,
    serialize_game,
)
from .pieces import (
    Colour,
    Coordinate,
    Obstacle,
    Piece,
    PieceType,
    coordinate_factory,
    opposite_colour,
    pieces_to_obstacles,
    possible_move_direction,
    possible_moves_direction,
    type_based_moves,
)

__version__ = "0.1.0"

__all__ = [
    "Board",
    "CheckMark",
    "Colour",
    "Coordinate",
    "FenError",
    "Game",
    "GameResult",
    "IllegalMoveError",
    "Move",
    "Obstacle",
    "PgnGame",
    "PgnParseError",
    "Piece",
    "PieceType",
    "REMIS",
    "Remis",
    "SanError",
    "SanKind",
    "SanToken",
    "Winner",
    "attacked_squares",
    "board_to_ascii",
    "castling_possible",
    "char_maps",
    "coordinate_factory",
    "default_board",
    "en_passant",
    "game_move",
    "has_legal_move",
    "in_check",
    "iss_castling",
    "iss_en_passant",
    "legal_moves",
    "move",
    "move_to_pgn_string",
    "new_game",
    "opposite_colour",
    "parse_fen",
    "parse_pgn",
    "pawn_move_two",
    "pawn_promotion",
    "perft",
    "pieces_to_obstacles",
    "possible_move_direction",
    "possible_moves",
    "possible_moves_direction",
    "resolve_san",
    "serialize_game",
    "stateful_impossible_moves",
    "stateful_possible_moves",
    "type_based_moves",
]
