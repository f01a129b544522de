#pragma once

#include <functional>
#include <string_view>

namespace fpsi {

using WarningHandler = std::function<void(std::string_view)>;

/// Installs a handler for non-fatal diagnostics; returns the previous one.
/// The default handler writes "warning: <message>" to stderr.
WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace fpsi
