#pragma once

#include <functional>
#include <string>
#include <vector>

namespace zen {

using WarningSink = std::function<void(const std::string&)>;

// Installs a sink for warnings and returns the previous one. The default
// sink writes "zen: warning: ..." lines to stderr. Passing an empty
// function silences warnings.
WarningSink set_warning_sink(WarningSink sink);

void warn(const std::string& message);

// RAII helper that collects warnings for the lifetime of the object.
class WarningCapture {
 public:
  WarningCapture();
  ~WarningCapture();
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
  WarningSink previous_;
};

}  // namespace zen
