namespace pfec { namespace { [[maybe_unused]] int placeholder_interp = 0; } }
