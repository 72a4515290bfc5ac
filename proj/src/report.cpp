#include "fqre/report.hpp"

namespace fqre
{

toffoli_t
sum_items(const std::vector<CostItem>& items)
{
    toffoli_t s = 0;
    for (const auto& i : items)
        s += i.value;
    return s;
}

std::int64_t
sum_items(const std::vector<QubitItem>& items)
{
    std::int64_t s = 0;
    for (const auto& i : items)
        s += i.value;
    return s;
}

}  // namespace fqre
