#include "hallmild/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace hallmild {

namespace {

std::mutex g_planner_mutex;

fftw_plan plan3(int n, int sign) {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n) * n * n);
    fftw_plan p = fftw_plan_dft_3d(n, n, n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    cache.emplace(key, p);
    return p;
}

fftw_plan plan1_many(int len, int count, int sign) {
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    auto key = std::make_tuple(len, count, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(len) * count);
    int dims[1] = {len};
    fftw_plan p = fftw_plan_many_dft(1, dims, count, buf, nullptr, 1, len, buf, nullptr, 1, len,
                                     sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    cache.emplace(key, p);
    return p;
}

}  // namespace

void fft3_forward(int n, std::complex<double>* data) {
    fftw_plan p = plan3(n, FFTW_FORWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data), reinterpret_cast<fftw_complex*>(data));
}

void fft3_backward(int n, std::complex<double>* data) {
    fftw_plan p = plan3(n, FFTW_BACKWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data), reinterpret_cast<fftw_complex*>(data));
}

void fft1_many(int len, int count, std::complex<double>* data, int sign) {
    fftw_plan p = plan1_many(len, count, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data), reinterpret_cast<fftw_complex*>(data));
}

}  // namespace hallmild
