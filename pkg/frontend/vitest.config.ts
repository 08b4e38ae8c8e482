import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "node",
    include: ["tests/**/*.test.ts"],
    globalSetup: ["tests/service.setup.ts"],
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
