#pragma once

#include <string>

#include "pitchtrack/types.hpp"

namespace pitchtrack {

// Reads a RIFF WAV file (16-bit PCM or 32-bit IEEE float). Multichannel
// input is averaged to mono; samples are scaled to [-1, 1].
// Throws std::runtime_error on unreadable files, unsupported encodings or
// zero-length audio.
AudioBuffer load_audio(const std::string& path);

// Writes a mono buffer as 16-bit PCM. Samples are clipped to [-1, 1).
void save_audio(const std::string& path, const AudioBuffer& buf);

}  // namespace pitchtrack
