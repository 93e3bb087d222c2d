// The arrangement search: per-part transposition options, memoized
// assignment feasibility, key selection by (accidentals, deviation), and
// final part-to-slot assignment by range fit.

#ifndef ARRANGE_SEARCH_HPP
#define ARRANGE_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "arrange/instruments.hpp"
#include "arrange/pitch.hpp"
#include "arrange/score.hpp"

namespace arranger {

/// Bit i set = slot i is a candidate. Arrangements are capped at 64 slots.
using SlotMask = std::uint64_t;

struct TranspositionChoice {
  int total_shift = 0;        // key offset + 12 * octave offset
  SlotMask playable_slots = 0;  // slots whose range contains the shifted part
};

/// One feasible outcome for a single key offset: per-part shifts plus the
/// slot sets a matching was certified against.
struct Selection {
  int key_offset = 0;  // -6..5
  std::vector<int> shifts;
  std::vector<SlotMask> slot_sets;
  int sharps = 0;
  int deviation = 0;  // sum of |shift| over parts
};

struct ArrangementResult {
  std::vector<int> assignment;  // part index -> slot index, a bijection
  std::vector<int> shifts;      // per-part total semitones
  KeySignature concert_fifths;  // concert key after the key offset
  int sharps = 0;
  int deviation = 0;
  double fit = 0.0;  // sum of |average pitch - slot range midpoint|
};

/// For each part, the transpositions total_shift = key_offset + 12k
/// (ascending k) that keep the part on the lattice and inside at least one
/// slot's range. Returns nullopt as soon as any part has no choice.
std::optional<std::vector<std::vector<TranspositionChoice>>>
findTransposedOptions(const Piece& piece, const SlotList& slots,
                      int key_offset);

/// True iff a perfect part-to-slot matching exists respecting the per-part
/// candidate sets. Recursive backtracking over parts in order, memoized on
/// the used-slot mask.
bool validateArrangement(const std::vector<SlotMask>& slot_sets,
                         std::size_t slot_count);

/// All feasible selections for one key offset, in deterministic order
/// (parts in document order, choices in ascending shift, last part
/// varying fastest).
std::vector<Selection> runTransposed(const Piece& piece, const SlotList& slots,
                                     int key_offset);

/// Total accidentals over the written key signatures of all slots for the
/// given concert key. Independent of the eventual part assignment.
int countSharps(const SlotList& slots, KeySignature concert_fifths);

/// Scans key offsets -6..5, pruning keys that cannot improve on the best
/// accidental total, and keeps the minimum-deviation selection under the
/// (sharps, deviation) hierarchical order. Ties keep the earlier offset.
std::optional<Selection> findBestChoice(const Piece& piece,
                                        const SlotList& slots);

/// Picks the range-valid part-to-slot bijection minimizing the fit metric
/// for the chosen shifts. Duplicate-instrument slots are assigned in
/// ascending index order.
ArrangementResult assignParts(const Piece& piece, const SlotList& slots,
                              const Selection& best);

/// The full pipeline: findBestChoice then assignParts.
std::optional<ArrangementResult> arrange(const Piece& piece,
                                         const SlotList& slots);

}  // namespace arranger

#endif  // ARRANGE_SEARCH_HPP
