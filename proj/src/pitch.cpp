#include "arrange/pitch.hpp"

#include <array>
#include <cctype>
#include <cstdlib>

namespace arranger {

namespace {

// Semitone offset of each natural letter above C.
constexpr std::array<int, 7> kLetterSemitone = {9, 11, 0, 2, 4, 5, 7};  // A..G

constexpr bool isNaturalPc(int pc) {
  return pc == 0 || pc == 2 || pc == 4 || pc == 5 || pc == 7 || pc == 9 ||
         pc == 11;
}

int mod12(int v) { return ((v % 12) + 12) % 12; }

// midi-style value (C4 = 60); lattice value = midi - 20 (A0 midi 21 -> 1).
int midiOf(int lattice_value) { return lattice_value + 20; }

struct ParsedName {
  char step;
  int alter;
  std::string_view rest;  // whatever follows the accidental
};

ParsedName parseStepAlter(std::string_view text, std::string_view whole) {
  if (text.empty()) throw ParseError("empty note name");
  char step = text[0];
  if (step < 'A' || step > 'G') {
    throw ParseError("invalid note letter in \"" + std::string(whole) + "\"");
  }
  text.remove_prefix(1);
  int alter = 0;
  while (!text.empty() && (text[0] == '#' || text[0] == 'b')) {
    alter += text[0] == '#' ? 1 : -1;
    text.remove_prefix(1);
  }
  if (alter < -2 || alter > 2) {
    throw ParseError("too many accidentals in \"" + std::string(whole) + "\"");
  }
  return {step, alter, text};
}

}  // namespace

PitchClass pitchClassOf(PitchIndex p) { return {mod12(midiOf(p.value))}; }

PitchIndex parseNoteName(std::string_view text) {
  auto [step, alter, rest] = parseStepAlter(text, text);
  if (rest.empty()) {
    throw ParseError("missing octave in \"" + std::string(text) + "\"");
  }
  int octave = 0;
  for (char c : rest) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("invalid octave in \"" + std::string(text) + "\"");
    }
    octave = octave * 10 + (c - '0');
  }
  int midi = 12 * (octave + 1) + kLetterSemitone[step - 'A'] + alter;
  int value = midi - 20;
  if (!onLattice(value)) {
    throw ParseError("note \"" + std::string(text) +
                     "\" is outside the A0..C8 range");
  }
  return {value};
}

PitchClass parsePitchClassName(std::string_view text) {
  auto [step, alter, rest] = parseStepAlter(text, text);
  if (!rest.empty()) {
    throw ParseError("trailing text in pitch class \"" + std::string(text) +
                     "\"");
  }
  return {mod12(kLetterSemitone[step - 'A'] + alter)};
}

SpelledPitch spellPitch(int lattice_value, KeySignature key) {
  int midi = midiOf(lattice_value);
  int pc = mod12(midi);
  int octave = midi / 12 - 1;
  static constexpr std::array<char, 12> kSharpStep = {
      'C', 'C', 'D', 'D', 'E', 'F', 'F', 'G', 'G', 'A', 'A', 'B'};
  static constexpr std::array<char, 12> kFlatStep = {
      'C', 'D', 'D', 'E', 'E', 'F', 'G', 'G', 'A', 'A', 'B', 'B'};
  if (isNaturalPc(pc)) {
    return {kSharpStep[pc], 0, octave};
  }
  // Accidentals never cross an octave boundary here: only C#..A# / Db..Bb
  // spellings are produced.
  if (key.fifths < 0) return {kFlatStep[pc], -1, octave};
  return {kSharpStep[pc], 1, octave};
}

int latticeValueOf(const SpelledPitch& sp) {
  return 12 * (sp.octave + 1) + kLetterSemitone[sp.step - 'A'] + sp.alter - 20;
}

std::string formatNoteName(PitchIndex p, KeySignature key) {
  SpelledPitch sp = spellPitch(p.value, key);
  std::string out(1, sp.step);
  if (sp.alter < 0) out.append(-sp.alter, 'b');
  if (sp.alter > 0) out.append(sp.alter, '#');
  out += std::to_string(sp.octave);
  return out;
}

KeySignature majorKeyFifths(PitchClass tonic) {
  // 7 is its own inverse mod 12, so f0 = 7 * pc (mod 12) solves
  // (7 * f) mod 12 = pc. Candidates f0 and f0 - 12; keep the smaller
  // magnitude, flats on the |6| tie.
  int f0 = mod12(7 * tonic.value);
  int sharp_side = f0;        // 0..11
  int flat_side = f0 - 12;    // -12..-1
  if (std::abs(flat_side) <= std::abs(sharp_side)) return {flat_side};
  return {sharp_side};
}

PitchClass concertPcOfFifths(KeySignature f) { return {mod12(7 * f.fifths)}; }

PitchClass writtenPitchClass(PitchClass sounding, PitchClass instrument_key) {
  return {mod12(sounding.value - instrument_key.value)};
}

}  // namespace arranger
