#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace vfc {

/// One simulation event. Serialized to the events JSON-lines stream with a
/// stable field order (tti, t, type, then payload fields in insertion order).
struct Event {
    long tti = 0;
    double time = 0.0;
    std::string type;
    nlohmann::ordered_json data = nlohmann::ordered_json::object();

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["tti"] = tti;
        j["t"] = time;
        j["type"] = type;
        for (auto it = data.begin(); it != data.end(); ++it) j[it.key()] = it.value();
        return j;
    }
};

class EventLog {
public:
    Event& emit(long tti, double time, std::string type) {
        events_.push_back(Event{tti, time, std::move(type)});
        return events_.back();
    }

    const std::vector<Event>& events() const { return events_; }
    std::vector<Event>& events() { return events_; }
    void clear() { events_.clear(); }

    std::string to_jsonl() const {
        std::string out;
        for (const auto& e : events_) {
            out += e.to_json().dump();
            out += '\n';
        }
        return out;
    }

private:
    std::vector<Event> events_;
};

}  // namespace vfc
