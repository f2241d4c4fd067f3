// Compares the OpenMP pixel kernels against their serial reference twins.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <vector>

#include "radig/color.hpp"
#include "radig/filters.hpp"
#include "radig/pipeline.hpp"

using namespace radig;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    best = std::min(best, ms);
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::cout << name << ": serial " << serial_ms << " ms, parallel " << parallel_ms
            << " ms, speedup " << serial_ms / parallel_ms << "x\n";
}

}  // namespace

int main(int argc, char** argv) {
  int width = 1024;
  int height = 768;
  int reps = 5;
  if (argc > 1) width = std::atoi(argv[1]);
  if (argc > 2) height = std::atoi(argv[2]);
  if (argc > 3) reps = std::atoi(argv[3]);
  if (width < 5 || height < 5 || reps < 1) {
    std::cerr << "usage: kernel_bench [width] [height] [reps]\n";
    return 1;
  }
  if (const char* env = std::getenv("RADIG_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }

  std::cout << "image " << width << "x" << height << ", " << omp_get_max_threads()
            << " threads, best of " << reps << "\n";
  const RgbImage img = noise_image(width, height, 7);
  const LabImage lab = srgb_to_lab(img);

  report("srgb_to_lab       ", time_ms([&] { (void)reference::srgb_to_lab(img); }, reps),
         time_ms([&] { (void)srgb_to_lab(img); }, reps));
  report("derivative_5tap   ", time_ms([&] { (void)reference::derivative_5tap(lab.L); }, reps),
         time_ms([&] { (void)derivative_5tap(lab.L); }, reps));
  report("gradient_magnitude", time_ms([&] { (void)reference::gradient_magnitude(lab); }, reps),
         time_ms([&] { (void)gradient_magnitude(lab); }, reps));
  return 0;
}
