#pragma once

namespace stc {

/// Every data-parallel kernel has a serial reference path selected with Exec::Serial.
enum class Exec { Serial, Parallel };

/// Sets the OpenMP thread count; 0 keeps the runtime default.
void set_thread_count(int threads);
int thread_count();

}  // namespace stc
