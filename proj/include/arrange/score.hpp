// Rhythm-preserving in-memory score model: parts of timed monophonic
// events, range/average statistics, and whole-part transposition.

#ifndef ARRANGE_SCORE_HPP
#define ARRANGE_SCORE_HPP

#include <optional>
#include <string>
#include <vector>

#include "arrange/pitch.hpp"

namespace arranger {

struct NoteEvent {
  std::optional<PitchIndex> pitch;  // absent for rests
  int duration = 0;                 // in divisions, > 0
  std::string notated_type;         // "quarter", "half", ... (may be empty)
  bool tie_start = false;
  bool tie_stop = false;
  int measure_index = 0;

  bool isRest() const { return !pitch.has_value(); }
};

struct Part {
  std::string id;
  std::string name;
  std::vector<NoteEvent> events;
  int measure_count = 0;
};

struct TimeSignature {
  int beats = 4;
  int beat_type = 4;
};

struct Piece {
  int divisions = 1;  // divisions per quarter note, shared by all parts
  KeySignature key;   // concert key
  TimeSignature time_signature;
  std::vector<Part> parts;
};

struct PartRange {
  PitchIndex lo;
  PitchIndex hi;

  bool contains(PartRange other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  int width() const { return hi.value - lo.value; }
  double median() const { return (lo.value + hi.value) / 2.0; }

  constexpr auto operator<=>(const PartRange&) const = default;
};

/// Lowest and highest sounding note of the part. Throws ParseError if the
/// part has no note events.
PartRange partRange(const Part& part);

/// Unweighted arithmetic mean of the note pitches; rests are excluded and
/// durations are ignored. Throws ParseError if the part has no notes.
double averagePitch(const Part& part);

/// Returns a copy with every note shifted by the given semitones. Rests,
/// durations, ties and measure structure are untouched. Throws
/// std::out_of_range if any shifted pitch leaves the 1..88 lattice.
Part transposePart(const Part& part, int semitones);

}  // namespace arranger

#endif  // ARRANGE_SCORE_HPP
