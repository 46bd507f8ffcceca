#include "tdoslab/scheduler.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tdoslab {

bool Scheduler::later(const Event& a, const Event& b) {
    // std::push_heap builds a max-heap; invert to pop the earliest.
    if (a.due != b.due) return a.due > b.due;
    return a.seq > b.seq;
}

void Scheduler::insert(SimTime due, ActorId target, MsgKind kind, ActorId from) {
    if (due < now_)
        throw std::invalid_argument("scheduler: event due " + std::to_string(due) +
                                    " lies before the clock at " + std::to_string(now_));
    heap_.push_back(Event{due, target, kind, from, next_seq_++});
    std::push_heap(heap_.begin(), heap_.end(), later);
}

void Scheduler::insert(std::span<const Event> events) {
    for (const Event& e : events) insert(e.due, e.target, e.kind, e.from);
}

const Event* Scheduler::peek() const {
    return heap_.empty() ? nullptr : &heap_.front();
}

std::optional<Event> Scheduler::tick() {
    if (heap_.empty()) return std::nullopt;
    std::pop_heap(heap_.begin(), heap_.end(), later);
    Event head = heap_.back();
    heap_.pop_back();
    now_ = head.due;
    return head;
}

std::vector<Event> Scheduler::snapshot_sorted() const {
    std::vector<Event> out = heap_;
    std::sort(out.begin(), out.end(), [](const Event& a, const Event& b) {
        if (a.due != b.due) return a.due < b.due;
        return a.seq < b.seq;
    });
    return out;
}

}  // namespace tdoslab
