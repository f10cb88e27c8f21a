#include "mbrl/expmgr/recorder.hpp"

#include <algorithm>
#include <cmath>

namespace mbrl {

void Recorder::append(const std::string& key, double value, const GlobalStatus& status) {
  RecordEntry e;
  e.key = key;
  e.value = value;
  e.anomaly = !std::isfinite(value);
  e.time_s = clock_.now();
  e.snapshot = status.snapshot();
  entries_.push_back(std::move(e));
  clock_.on_record_append();
}

std::vector<std::string> Recorder::keys() const {
  std::vector<std::string> out;
  for (const RecordEntry& e : entries_)
    if (std::find(out.begin(), out.end(), e.key) == out.end()) out.push_back(e.key);
  return out;
}

std::vector<const RecordEntry*> Recorder::entries_for(const std::string& key) const {
  std::vector<const RecordEntry*> out;
  for (const RecordEntry& e : entries_)
    if (e.key == key) out.push_back(&e);
  return out;
}

bool Recorder::has_key(const std::string& key) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const RecordEntry& e) { return e.key == key; });
}

}  // namespace mbrl
