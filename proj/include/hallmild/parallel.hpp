#pragma once

#include <functional>

namespace hallmild {

// Process-wide worker count for parallel maps. 1 = serial. Results must not
// depend on this value: work items write to disjoint slots and reductions
// happen in index order afterwards.
void set_thread_count(int n);
int thread_count();

// Runs fn(i) for i in [0, count). Partitions indices over threads; fn must
// only touch state owned by item i.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace hallmild
