#include "pdspec/report.hpp"

#include <algorithm>
#include <sstream>

namespace pdspec {

namespace {
constexpr std::size_t kMaxMessages = 5;
}

Report::Entry& Report::entry(const std::string& name) {
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.name == name; });
    if (it != entries_.end()) return *it;
    entries_.push_back(Entry{name, 0, 0, {}});
    return entries_.back();
}

void Report::check(const std::string& name, bool ok, const std::string& detail) {
    Entry& e = entry(name);
    ++e.checked;
    if (!ok) {
        ++e.failed;
        if (e.messages.size() < kMaxMessages) e.messages.push_back(detail);
    }
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (const Entry& src : other.entries_) {
        Entry& dst = entry(prefix + src.name);
        dst.checked += src.checked;
        dst.failed += src.failed;
        for (const auto& m : src.messages) {
            if (dst.messages.size() < kMaxMessages) dst.messages.push_back(m);
        }
    }
}

bool Report::ok() const { return failed() == 0; }

std::size_t Report::checked() const {
    std::size_t n = 0;
    for (const auto& e : entries_) n += e.checked;
    return n;
}

std::size_t Report::failed() const {
    std::size_t n = 0;
    for (const auto& e : entries_) n += e.failed;
    return n;
}

std::string Report::first_failure() const {
    for (const auto& e : entries_) {
        if (e.failed > 0) return e.name + ": " + (e.messages.empty() ? std::string("failed") : e.messages.front());
    }
    return {};
}

std::string Report::summary() const {
    std::ostringstream out;
    for (const auto& e : entries_) {
        out << (e.failed == 0 ? "pass " : "FAIL ") << e.name << " (" << e.checked - e.failed << "/" << e.checked
            << ")\n";
        for (const auto& m : e.messages) out << "    " << m << "\n";
    }
    return out.str();
}

}  // namespace pdspec
