#include "arrange/search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <unordered_map>

namespace arranger {

namespace {

constexpr int kMinKeyOffset = -6;
constexpr int kMaxKeyOffset = 5;
constexpr int kMaxOctaveOffset = 7;  // vacuous given the lattice bound

int floorDiv(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int ceilDiv(int a, int b) { return -floorDiv(-a, b); }

struct Matcher {
  const std::vector<SlotMask>& sets;
  std::unordered_map<SlotMask, bool> memo;

  bool search(std::size_t part, SlotMask used) {
    if (part == sets.size()) return true;
    auto it = memo.find(used);
    if (it != memo.end()) return it->second;
    bool ok = false;
    SlotMask avail = sets[part] & ~used;
    while (avail != 0) {
      SlotMask bit = avail & (~avail + 1);
      avail &= avail - 1;
      if (search(part + 1, used | bit)) {
        ok = true;
        break;
      }
    }
    memo.emplace(used, ok);
    return ok;
  }
};

KeySignature concertKeyAfterOffset(const Piece& piece, int key_offset) {
  PitchClass pc = concertPcOfFifths(piece.key);
  return majorKeyFifths({((pc.value + key_offset) % 12 + 12) % 12});
}

}  // namespace

std::optional<std::vector<std::vector<TranspositionChoice>>>
findTransposedOptions(const Piece& piece, const SlotList& slots,
                      int key_offset) {
  std::vector<std::vector<TranspositionChoice>> per_part;
  per_part.reserve(piece.parts.size());
  for (const Part& part : piece.parts) {
    PartRange range = partRange(part);
    // Octave offsets keeping lo+shift >= 1 and hi+shift <= 88.
    int k_lo = ceilDiv(PitchIndex::kMin - range.lo.value - key_offset, 12);
    int k_hi = floorDiv(PitchIndex::kMax - range.hi.value - key_offset, 12);
    k_lo = std::max(k_lo, -kMaxOctaveOffset);
    k_hi = std::min(k_hi, kMaxOctaveOffset);
    std::vector<TranspositionChoice> choices;
    for (int k = k_lo; k <= k_hi; ++k) {
      int shift = key_offset + 12 * k;
      PartRange shifted{{range.lo.value + shift}, {range.hi.value + shift}};
      SlotMask mask = 0;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (slots[s].range.contains(shifted)) mask |= SlotMask{1} << s;
      }
      if (mask != 0) choices.push_back({shift, mask});
    }
    if (choices.empty()) return std::nullopt;
    per_part.push_back(std::move(choices));
  }
  return per_part;
}

bool validateArrangement(const std::vector<SlotMask>& slot_sets,
                         std::size_t slot_count) {
  if (slot_sets.size() > slot_count) return false;
  Matcher matcher{slot_sets, {}};
  return matcher.search(0, 0);
}

std::vector<Selection> runTransposed(const Piece& piece, const SlotList& slots,
                                     int key_offset) {
  std::vector<Selection> selections;
  auto options = findTransposedOptions(piece, slots, key_offset);
  if (!options) return selections;

  const std::size_t n = piece.parts.size();
  const SlotMask all_slots =
      slots.size() >= 64 ? ~SlotMask{0} : (SlotMask{1} << slots.size()) - 1;
  int sharps = countSharps(slots, concertKeyAfterOffset(piece, key_offset));

  // Odometer over the per-part choice lists, last part varying fastest.
  std::vector<std::size_t> index(n, 0);
  for (;;) {
    SlotMask covered = 0;
    for (std::size_t i = 0; i < n; ++i) {
      covered |= (*options)[i][index[i]].playable_slots;
    }
    if (covered == all_slots) {
      Selection sel;
      sel.key_offset = key_offset;
      sel.sharps = sharps;
      for (std::size_t i = 0; i < n; ++i) {
        const TranspositionChoice& choice = (*options)[i][index[i]];
        sel.shifts.push_back(choice.total_shift);
        sel.slot_sets.push_back(choice.playable_slots);
        sel.deviation += std::abs(choice.total_shift);
      }
      if (validateArrangement(sel.slot_sets, slots.size())) {
        selections.push_back(std::move(sel));
      }
    }
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++index[i] < (*options)[i].size()) break;
      index[i] = 0;
      if (i == 0) return selections;
    }
  }
}

int countSharps(const SlotList& slots, KeySignature concert_fifths) {
  PitchClass concert_pc = concertPcOfFifths(concert_fifths);
  int total = 0;
  for (const Instrument& slot : slots.slots) {
    PitchClass written = writtenPitchClass(concert_pc, slot.key);
    total += std::abs(majorKeyFifths(written).fifths);
  }
  return total;
}

std::optional<Selection> findBestChoice(const Piece& piece,
                                        const SlotList& slots) {
  std::optional<Selection> best;
  int best_sharps = std::numeric_limits<int>::max();
  for (int offset = kMinKeyOffset; offset <= kMaxKeyOffset; ++offset) {
    int sharps = countSharps(slots, concertKeyAfterOffset(piece, offset));
    if (sharps > best_sharps) continue;
    std::vector<Selection> selections = runTransposed(piece, slots, offset);
    const Selection* candidate = nullptr;
    for (const Selection& sel : selections) {
      if (candidate == nullptr || sel.deviation < candidate->deviation) {
        candidate = &sel;
      }
    }
    if (candidate == nullptr) continue;
    if (!best || sharps < best_sharps ||
        candidate->deviation < best->deviation) {
      best = *candidate;
      best_sharps = sharps;
    }
  }
  return best;
}

ArrangementResult assignParts(const Piece& piece, const SlotList& slots,
                              const Selection& best) {
  const std::size_t n = piece.parts.size();

  std::vector<PartRange> ranges(n, PartRange{{1}, {1}});
  std::vector<double> averages(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    Part shifted = transposePart(piece.parts[i], best.shifts[i]);
    ranges[i] = partRange(shifted);
    averages[i] = averagePitch(shifted);
  }

  // Slots of the same instrument are interchangeable; enumerate distinct
  // multiset permutations of group ids instead of all slot permutations.
  struct Group {
    PartRange range;
    double median;
    std::vector<std::size_t> slot_indices;
  };
  std::vector<Group> groups;
  std::map<std::string, std::size_t> group_of_id;
  std::vector<std::size_t> group_of_slot(slots.size());
  for (std::size_t s = 0; s < slots.size(); ++s) {
    auto [it, inserted] = group_of_id.try_emplace(slots[s].id, groups.size());
    if (inserted) {
      groups.push_back(
          {slots[s].range, slots[s].range.median(), {}});
    }
    groups[it->second].slot_indices.push_back(s);
    group_of_slot[s] = it->second;
  }

  std::vector<std::size_t> perm = group_of_slot;  // groups in slot order
  std::sort(perm.begin(), perm.end());

  std::optional<std::vector<std::size_t>> best_perm;
  double best_fit = 0.0;
  do {
    bool valid = true;
    double fit = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Group& g = groups[perm[i]];
      if (!g.range.contains(ranges[i])) {
        valid = false;
        break;
      }
      fit += std::abs(averages[i] - g.median);
    }
    if (valid && (!best_perm || fit < best_fit)) {
      best_perm = perm;
      best_fit = fit;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (!best_perm) {
    throw std::logic_error("selection admits no valid assignment");
  }

  ArrangementResult result;
  result.assignment.resize(n);
  std::vector<std::size_t> next_slot(groups.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Group& g = groups[(*best_perm)[i]];
    result.assignment[i] =
        static_cast<int>(g.slot_indices[next_slot[(*best_perm)[i]]++]);
  }
  result.shifts = best.shifts;
  result.concert_fifths = concertKeyAfterOffset(piece, best.key_offset);
  result.sharps = best.sharps;
  result.deviation = best.deviation;
  result.fit = best_fit;
  return result;
}

std::optional<ArrangementResult> arrange(const Piece& piece,
                                         const SlotList& slots) {
  std::optional<Selection> best = findBestChoice(piece, slots);
  if (!best) return std::nullopt;
  return assignParts(piece, slots, *best);
}

}  // namespace arranger
