#include "arrange/score.hpp"

#include <algorithm>
#include <stdexcept>

namespace arranger {

PartRange partRange(const Part& part) {
  std::optional<PartRange> range;
  for (const NoteEvent& ev : part.events) {
    if (ev.isRest()) continue;
    if (!range) {
      range = PartRange{*ev.pitch, *ev.pitch};
    } else {
      range->lo = std::min(range->lo, *ev.pitch);
      range->hi = std::max(range->hi, *ev.pitch);
    }
  }
  if (!range) {
    throw ParseError("part \"" + part.id + "\" contains no notes");
  }
  return *range;
}

double averagePitch(const Part& part) {
  long sum = 0;
  long count = 0;
  for (const NoteEvent& ev : part.events) {
    if (ev.isRest()) continue;
    sum += ev.pitch->value;
    ++count;
  }
  if (count == 0) {
    throw ParseError("part \"" + part.id + "\" contains no notes");
  }
  return static_cast<double>(sum) / static_cast<double>(count);
}

Part transposePart(const Part& part, int semitones) {
  Part out = part;
  for (NoteEvent& ev : out.events) {
    if (ev.isRest()) continue;
    int shifted = ev.pitch->value + semitones;
    if (!onLattice(shifted)) {
      throw std::out_of_range("transposition by " + std::to_string(semitones) +
                              " pushes part \"" + part.id +
                              "\" off the A0..C8 lattice");
    }
    ev.pitch = PitchIndex{shifted};
  }
  return out;
}

}  // namespace arranger
