#include "lfrgen/hh/havel_hakimi.hpp"

namespace lfrgen {

bool HavelHakimiGenerator::run_iteration() {
    const auto unmet_before = unmet_;
    if (!list_.advance(step_, unmet_))
        return false;
    if (unmet_ > unmet_before)
        shortfalls_.emplace_back(step_.node, unmet_ - unmet_before);
    if (observer_)
        observer_(list_.snapshot());
    cursor_ = step_.r1_lo;
    in_second_range_ = false;
    step_active_ = true;
    return true;
}

bool HavelHakimiGenerator::next(Edge& out) {
    for (;;) {
        if (step_active_) {
            if (!in_second_range_ && cursor_ >= step_.r1_hi) {
                cursor_ = step_.r2_lo;
                in_second_range_ = true;
            }
            if (!in_second_range_ || cursor_ < step_.r2_hi) {
                if (!in_second_range_ && cursor_ < step_.r1_hi) {
                    out = Edge{step_.node, cursor_++};
                    return true;
                }
                if (in_second_range_ && cursor_ < step_.r2_hi) {
                    out = Edge{step_.node, cursor_++};
                    return true;
                }
            }
            step_active_ = false;
        }
        if (!run_iteration())
            return false;
    }
}

HhResult hh_edges(const DegreeSequence& degrees) {
    HavelHakimiGenerator gen(degrees);
    HhResult result;
    Edge e;
    while (gen.next(e))
        result.edges.push_back(e);
    result.unmet = gen.unmet();
    result.graphical = gen.graphical();
    return result;
}

bool is_graphical(const DegreeSequence& degrees) {
    auto list = GroupList::compact(degrees);
    ExtractionStep step;
    std::uint64_t unmet = 0;
    while (list.advance(step, unmet)) {
        if (unmet > 0)
            return false;
    }
    return unmet == 0;
}

DegreeSequence hh_realized_degrees(const DegreeSequence& degrees) {
    auto list = GroupList::compact(degrees);
    ExtractionStep step;
    DegreeSequence realized = degrees;
    std::uint64_t unmet = 0;
    while (true) {
        const auto before = unmet;
        if (!list.advance(step, unmet))
            break;
        if (unmet > before)
            realized.at(step.node - 1) -= (unmet - before);
    }
    return realized;
}

} // namespace lfrgen
