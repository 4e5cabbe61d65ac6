import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    // The integration suite boots the real HTTP service in a subprocess.
    testTimeout: 60_000,
    hookTimeout: 60_000,
  },
});
