package app;

import app.model.Circle;
import app.model.Shape;
import app.util.MathUtil;
import java.util.List;
import java.util.ArrayList;

public class Main {
    public static void main(String[] args) {
        List<Shape> shapes = new ArrayList<>();
        shapes.add(new Circle(2.0));
        for (Shape s : shapes) {
            System.out.println(s.area());
        }
        System.out.println(MathUtil.clamp(5, 0, 3));
    }
}
