#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pdspec {

// Named check outcomes. A report keeps per-name counts and the first few
// violation messages instead of one entry per evaluated instance.
class Report {
public:
    struct Entry {
        std::string name;
        std::size_t checked = 0;
        std::size_t failed = 0;
        std::vector<std::string> messages;
    };

    void check(const std::string& name, bool ok, const std::string& detail = {});
    template <typename DetailFn>
    void check_lazy(const std::string& name, bool ok, DetailFn&& detail) {
        if (ok) {
            check(name, true);
        } else {
            check(name, false, detail());
        }
    }
    void merge(const Report& other, const std::string& prefix = {});

    bool ok() const;
    std::size_t checked() const;
    std::size_t failed() const;
    const std::vector<Entry>& entries() const { return entries_; }
    // First recorded violation, or an empty string.
    std::string first_failure() const;
    std::string summary() const;

private:
    Entry& entry(const std::string& name);
    std::vector<Entry> entries_;
};

}  // namespace pdspec
