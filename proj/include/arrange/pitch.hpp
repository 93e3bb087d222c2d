// Integer pitch arithmetic on the 88-note piano lattice, pitch-class math,
// and key-signature computation on the circle of fifths.

#ifndef ARRANGE_PITCH_HPP
#define ARRANGE_PITCH_HPP

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace arranger {

/// Raised for malformed user input (note names, TOML, MusicXML).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Semitone index on the piano lattice: A0 = 1, middle C (C4) = 40, C8 = 88.
struct PitchIndex {
  static constexpr int kMin = 1;
  static constexpr int kMax = 88;

  int value = kMin;

  constexpr auto operator<=>(const PitchIndex&) const = default;
};

constexpr bool onLattice(int value) {
  return value >= PitchIndex::kMin && value <= PitchIndex::kMax;
}

/// Chroma 0..11 with C = 0.
struct PitchClass {
  int value = 0;

  constexpr auto operator<=>(const PitchClass&) const = default;
};

/// Signed position on the circle of fifths; |fifths| = accidental count.
struct KeySignature {
  int fifths = 0;

  constexpr auto operator<=>(const KeySignature&) const = default;
};

/// A pitch as it appears on a staff: letter, alteration, scientific octave.
struct SpelledPitch {
  char step;   // 'A'..'G'
  int alter;   // -2..2
  int octave;  // scientific pitch notation, C4 = middle C
};

PitchClass pitchClassOf(PitchIndex p);

/// Parses scientific pitch notation ("Db3", "A0", "C#4"). Accepts #, b, ##,
/// bb. Throws ParseError for malformed text or notes outside A0..C8.
PitchIndex parseNoteName(std::string_view text);

/// Parses a bare pitch-class name without octave ("Eb", "F#", "C").
PitchClass parsePitchClassName(std::string_view text);

/// Spells an arbitrary semitone index (same lattice scale as PitchIndex but
/// unbounded) using the accidental direction implied by the key: flats when
/// fifths < 0, sharps otherwise.
SpelledPitch spellPitch(int lattice_value, KeySignature key);

/// Converts a spelled pitch back to its lattice value (may be off-lattice).
int latticeValueOf(const SpelledPitch& sp);

std::string formatNoteName(PitchIndex p, KeySignature key);

/// Fifths of the major key on the given tonic, minimal |fifths|. The one
/// six-accidental tie (F#/Gb) resolves to the flat spelling, -6.
KeySignature majorKeyFifths(PitchClass tonic);

/// Tonic pitch class of the major key with the given fifths: (7*f) mod 12.
PitchClass concertPcOfFifths(KeySignature f);

/// Written pitch class on an instrument "in key": its written C sounds as
/// key, so written = (sounding - key) mod 12.
PitchClass writtenPitchClass(PitchClass sounding, PitchClass instrument_key);

}  // namespace arranger

#endif  // ARRANGE_PITCH_HPP
