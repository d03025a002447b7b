package app.util;

import java.util.function.Supplier;

public class Tasks {
    private Runnable job = new Runnable() {
        @Override
        public void run() {
            System.out.println("run");
        }
    };

    public Supplier<Integer> answer() {
        return () -> {
            return 42;
        };
    }

    static class Counter {
        int value;

        void inc() {
            value++;
        }
    }
}
