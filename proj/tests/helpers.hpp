#pragma once

#include <functional>

#include "doctest.h"

#include "critlat/error.hpp"

namespace helpers {

  inline critlat::ErrorKind kind_of(std::function<void()> const& f) {
    try {
      f();
    } catch (critlat::Error const& e) {
      return e.kind();
    }
    FAIL("expected an error");
    return critlat::ErrorKind::ParseError;
  }

}  // namespace helpers
