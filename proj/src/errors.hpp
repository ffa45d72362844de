// Copyright 2026 the voippipe authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace voippipe {

enum class ErrorKind {
  InvalidArgument,
  Io,
  Format,
  Socket,
  NoTraffic,
};

// All pipeline stages throw Error with a stage-tagged message
// ("audio_io: ...", "transport: ...") so failures name their stage.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace voippipe
